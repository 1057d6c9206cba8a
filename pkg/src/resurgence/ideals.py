"""Homogeneous ideals of k[x, y, z] and their graded pieces.

Graded pieces are handled as row spaces in the monomial basis of a fixed
degree (monomials ordered as in :func:`monomials_of_degree`).  Two
independent routes give dim I_t:

* ``"groebner"``: count standard monomials of a degree-truncated basis;
* ``"span"``: build I_t = R_1 I_{t-1} + (generators of degree t) by exact
  row reduction;

and ideals attached to a fat-point scheme have a third, ``"scheme"``,
computed from vanishing conditions (see :mod:`resurgence.fatpoints`).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .algebra import Field, kernel_array, rank_array, rref_array, row_space_contains, zeros
from .groebner import GroebnerBasis, buchberger, eliminate, normal_form
from .poly import GREVLEX, MonomialOrder, Poly, Ring, monomial_index, monomials_of_degree


def ambient_dim(t: int) -> int:
    """dim R_t for R = k[x, y, z]."""
    return comb(t + 2, 2) if t >= 0 else 0


# ---------------------------------------------------------------------------
# vectors <-> polynomials


def poly_to_vector(f: Poly, t: int) -> np.ndarray:
    F = f.ring.field
    idx = monomial_index(t)
    v = zeros(F, (len(idx),))
    for e, c in f.terms.items():
        if sum(e) != t:
            raise ValueError(f"polynomial is not homogeneous of degree {t}")
        v[idx[e]] = c
    return v


def vector_to_poly(v, t: int, ring: Ring) -> Poly:
    mons = monomials_of_degree(t)
    F = ring.field
    return Poly._raw(ring, {mons[i]: (F.norm(c) if F.dtype is object else int(c)) for i, c in enumerate(v) if c})


@lru_cache(maxsize=None)
def _shift_index(t: int, var: int) -> np.ndarray:
    up = monomial_index(t + 1)
    out = []
    for e in monomials_of_degree(t):
        e2 = list(e)
        e2[var] += 1
        out.append(up[tuple(e2)])
    return np.array(out, dtype=np.intp)


@lru_cache(maxsize=256)
def _product_index(ta: int, tb: int) -> np.ndarray:
    up = monomial_index(ta + tb)
    ma, mb = monomials_of_degree(ta), monomials_of_degree(tb)
    return np.array([[up[(a[0] + b[0], a[1] + b[1], a[2] + b[2])] for b in mb] for a in ma], dtype=np.intp)


def times_variables(rows: np.ndarray, t: int, field: Field) -> np.ndarray:
    """Stack x*rows, y*rows, z*rows as degree t+1 vectors."""
    k = rows.shape[0]
    out = zeros(field, (3 * k, ambient_dim(t + 1)))
    for v in range(3):
        out[v * k : (v + 1) * k][:, _shift_index(t, v)] = rows
    return out


def multiply_spaces(a: np.ndarray, ta: int, b: np.ndarray, tb: int, field: Field) -> np.ndarray:
    """Rows are all products a_i * b_j (degree ta + tb), in row-major pair order."""
    ka, kb = a.shape[0], b.shape[0]
    nc = ambient_dim(ta + tb)
    out = zeros(field, (ka * kb, nc))
    if ka == 0 or kb == 0:
        return out
    idx = _product_index(ta, tb)
    rows = np.arange(kb)[:, None, None]
    for i in range(ka):
        nz = np.flatnonzero(a[i])
        if nz.size == 0:
            continue
        vals = field.norm_array(a[i][nz][None, :, None] * b[:, None, :])
        block = zeros(field, (kb, nc))
        np.add.at(block, (rows, idx[nz][None, :, :]), vals)
        out[i * kb : (i + 1) * kb] = field.norm_array(block)
    return out


# ---------------------------------------------------------------------------
# graded pieces


class GradedPiece:
    """A subspace of R_t, stored as an rref basis."""

    __slots__ = ("ring", "degree", "matrix", "pivots")

    def __init__(self, ring: Ring, degree: int, rows: np.ndarray | None = None, reduced: bool = False):
        self.ring = ring
        self.degree = degree
        F = ring.field
        n = ambient_dim(degree)
        if rows is None or rows.shape[0] == 0:
            self.matrix = zeros(F, (0, n))
            self.pivots: tuple[int, ...] = ()
        elif reduced:
            self.matrix = rows
            self.pivots = tuple(int(np.flatnonzero(r)[0]) for r in rows)
        else:
            m, piv = rref_array(rows, F)
            self.matrix = m
            self.pivots = tuple(piv)

    @classmethod
    def from_polys(cls, ring: Ring, degree: int, polys: Iterable[Poly]) -> "GradedPiece":
        vecs = [poly_to_vector(f, degree) for f in polys if not f.is_zero()]
        if not vecs:
            return cls(ring, degree)
        return cls(ring, degree, np.array(vecs, dtype=ring.field.dtype))

    @classmethod
    def full(cls, ring: Ring, degree: int) -> "GradedPiece":
        n = ambient_dim(degree)
        m = zeros(ring.field, (n, n))
        for i in range(n):
            m[i, i] = ring.field.one
        return cls(ring, degree, m, reduced=True)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def basis(self) -> list[Poly]:
        return [vector_to_poly(r, self.degree, self.ring) for r in self.matrix]

    def contains(self, f) -> bool:
        if isinstance(f, GradedPiece):
            return self.degree == f.degree and all(self.contains_vector(r) for r in f.matrix)
        if f.is_zero():
            return True
        if not f.is_homogeneous() or f.degree != self.degree:
            return False
        return self.contains_vector(poly_to_vector(f, self.degree))

    def contains_vector(self, v) -> bool:
        return row_space_contains(self.matrix, self.pivots, v, self.ring.field)

    def __le__(self, other: "GradedPiece") -> bool:
        return other.contains(self)

    def __eq__(self, other):
        if not isinstance(other, GradedPiece):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.pivots == other.pivots
            and bool(np.all(self.matrix == other.matrix))
        )

    def __add__(self, other: "GradedPiece") -> "GradedPiece":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return GradedPiece(self.ring, self.degree, np.vstack([self.matrix, other.matrix]))

    def times(self, other: "GradedPiece") -> "GradedPiece":
        """Span of all pairwise products."""
        rows = multiply_spaces(self.matrix, self.degree, other.matrix, other.degree, self.ring.field)
        return GradedPiece(self.ring, self.degree + other.degree, rows)

    def times_poly(self, f: Poly) -> "GradedPiece":
        return self.times(GradedPiece.from_polys(self.ring, f.degree, [f]))

    def times_linear_forms(self) -> "GradedPiece":
        if self.dim == 0:
            return GradedPiece(self.ring, self.degree + 1)
        return GradedPiece(self.ring, self.degree + 1, times_variables(self.matrix, self.degree, self.ring.field))

    def __repr__(self):
        return f"GradedPiece(degree={self.degree}, dim={self.dim})"


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """Finitely generated homogeneous ideal of k[x, y, z].

    The unit ideal is represented by ``unit=True`` with no generators.
    ``scheme`` optionally records the fat-point scheme the ideal is the
    ideal of; it must provide ``piece(t)`` and ``degree``.
    """

    def __init__(self, generators: Iterable[Poly] = (), ring: Ring | None = None, unit: bool = False, scheme=None):
        gens = [g for g in generators if not g.is_zero()]
        if ring is None:
            if not gens:
                raise ValueError("ring required for an ideal without generators")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise ValueError("generators live in different rings")
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
            if g.degree == 0:
                raise ValueError("constant generator: use Ideal.unit_ideal for the unit ideal")
        if unit and gens:
            raise ValueError("the unit ideal carries no generators")
        self.ring = ring
        self.generators: tuple[Poly, ...] = tuple(gens)
        self.unit = unit
        self.scheme = scheme
        self._bases: dict[MonomialOrder, GroebnerBasis] = {}
        self._pieces: dict[int, GradedPiece] = {}
        self._cache: dict = {}

    @classmethod
    def unit_ideal(cls, ring: Ring) -> "Ideal":
        return cls((), ring=ring, unit=True)

    @classmethod
    def maximal(cls, ring: Ring) -> "Ideal":
        return cls(ring.gens(), ring)

    @property
    def field(self) -> Field:
        return self.ring.field

    def is_zero(self) -> bool:
        return not self.unit and not self.generators

    def generator_degrees(self) -> list[int]:
        return sorted(g.degree for g in self.generators)

    def __repr__(self):
        if self.unit:
            return "Ideal(<1>)"
        return f"Ideal({len(self.generators)} generators, degrees {self.generator_degrees()})"

    # -- Groebner bases -------------------------------------------------------

    def groebner(self, order: MonomialOrder = GREVLEX, truncation: int | None = None) -> GroebnerBasis:
        cached = self._bases.get(order)
        if cached is not None and (cached.truncation is None or (truncation is not None and truncation <= cached.truncation)):
            return cached
        G = buchberger(self.generators, order, truncation=truncation, ring=self.ring)
        self._bases[order] = G
        return G

    def contains(self, f: Poly) -> bool:
        if f.is_zero() or self.unit:
            return True
        if self.is_zero():
            return False
        comps = f.homogeneous_components().values()
        G = self.groebner(GREVLEX, truncation=f.degree)
        return all(normal_form(c, G).is_zero() for c in comps)

    def issubset(self, other: "Ideal") -> bool:
        if self.is_zero() or other.unit:
            return True
        if self.unit:
            return other.unit
        return all(other.contains(g) for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.unit or other.unit:
            return self.unit == other.unit
        G1, G2 = self.groebner(), other.groebner()
        return G1.truncation is None and G2.truncation is None and G1.generators == G2.generators

    __hash__ = None

    # -- arithmetic ------------------------------------------------------------

    def _same_ring(self, other: "Ideal"):
        if self.ring != other.ring:
            raise ValueError("ideals live in different rings")

    def __add__(self, other: "Ideal") -> "Ideal":
        self._same_ring(other)
        if self.unit or other.unit:
            return Ideal.unit_ideal(self.ring)
        return Ideal(self.generators + other.generators, self.ring)

    def __mul__(self, other: "Ideal") -> "Ideal":
        self._same_ring(other)
        if self.unit:
            return other
        if other.unit:
            return self
        return Ideal([f * g for f in self.generators for g in other.generators], self.ring)

    def __pow__(self, e: int) -> "Ideal":
        return self.power(e)

    def power(self, e: int) -> "Ideal":
        """Ordinary power; generators are the e-fold products of generators."""
        if not isinstance(e, int) or e < 1:
            raise ValueError("power exponent must be >= 1")
        if self.unit:
            return self
        return Ideal(_products(self.generators, e), self.ring)

    def intersect(self, other: "Ideal") -> "Ideal":
        """Intersection via elimination of t from t*I + (1-t)*J."""
        self._same_ring(other)
        if self.unit:
            return other
        if other.unit:
            return self
        if self.is_zero() or other.is_zero():
            return Ideal((), self.ring)
        big = self.ring.with_aux(1)
        t = big.var(big.names[0])
        one_minus_t = big.one() - t
        gens = [t * f.embed(big) for f in self.generators] + [one_minus_t * g.embed(big) for g in other.generators]
        out = []
        for g in eliminate(gens, 1, ring=big):
            out.extend(c for c in g.homogeneous_components().values())
        return Ideal(out, self.ring)

    def quotient_by(self, f: Poly) -> "Ideal":
        """I : f."""
        if self.unit:
            return self
        J = self.intersect(Ideal([f], self.ring))
        gens = [g.exact_div(f) for g in J.generators]
        if any(g.degree == 0 for g in gens):
            return Ideal.unit_ideal(self.ring)
        return Ideal(gens, self.ring)

    def quotient(self, other: "Ideal") -> "Ideal":
        """I : J."""
        if other.is_zero():
            return Ideal.unit_ideal(self.ring)
        out = None
        for g in other.generators:
            q = self.quotient_by(g)
            out = q if out is None else out.intersect(q)
        return out

    def saturate_irrelevant(self, max_steps: int = 64) -> "Ideal":
        """I : M^infinity by iterated quotients by M = (x, y, z)."""
        M = Ideal.maximal(self.ring)
        cur = self
        for _ in range(max_steps):
            nxt = cur.quotient(M)
            if nxt.unit:
                return nxt
            if nxt == cur:
                return cur
            cur = nxt
        raise RuntimeError("saturation did not stabilize")

    # -- graded pieces ---------------------------------------------------------

    def piece(self, t: int, route: str = "auto") -> GradedPiece:
        """The graded piece I_t."""
        if t < 0:
            return GradedPiece(self.ring, 0)
        if self.unit:
            return GradedPiece.full(self.ring, t)
        if route == "auto":
            route = "scheme" if self.scheme is not None else "span"
        if route == "scheme":
            if self.scheme is None:
                raise ValueError("ideal has no attached scheme")
            return self.scheme.piece(t)
        if route != "span":
            raise ValueError(f"unknown route {route!r}")
        return self._span_piece(t)

    def _span_piece(self, t: int) -> GradedPiece:
        if t in self._pieces:
            return self._pieces[t]
        mins = min((g.degree for g in self.generators), default=None)
        if mins is None or t < mins:
            piece = GradedPiece(self.ring, t)
        else:
            prev = self._span_piece(t - 1)
            rows = []
            if prev.dim:
                rows.append(times_variables(prev.matrix, t - 1, self.field))
            new = [poly_to_vector(g, t) for g in self.generators if g.degree == t]
            if new:
                rows.append(np.array(new, dtype=self.field.dtype))
            piece = GradedPiece(self.ring, t, np.vstack(rows)) if rows else GradedPiece(self.ring, t)
        self._pieces[t] = piece
        return piece

    def graded_dim(self, t: int, route: str = "auto") -> int:
        """dim I_t."""
        if t < 0:
            return 0
        if self.unit:
            return ambient_dim(t)
        if route == "groebner":
            if self.is_zero():
                return 0
            G = self.groebner(GREVLEX, truncation=t)
            lms = G.leading_monomials
            standard = sum(
                1 for m in monomials_of_degree(t) if not any(all(a <= b for a, b in zip(l, m)) for l in lms)
            )
            return ambient_dim(t) - standard
        return self.piece(t, route).dim

    def hilbert(self, t: int, route: str = "auto") -> int:
        """dim (R/I)_t."""
        return ambient_dim(t) - self.graded_dim(t, route)

    def alpha(self) -> int:
        """Least degree of a nonzero form in I."""
        if self.is_zero():
            raise ValueError("alpha of the zero ideal")
        if self.unit:
            return 0
        bound = min(g.degree for g in self.generators)
        for t in range(bound + 1):
            if self.graded_dim(t) > 0:
                return t
        raise AssertionError("generator degree bound violated")

    def minimal_generator_counts(self, upto: int | None = None) -> dict[int, int]:
        """Number of minimal generators in each degree, dim I_t - dim R_1 I_{t-1}."""
        if self.is_zero():
            raise ValueError("zero ideal")
        top = max(g.degree for g in self.generators) if upto is None else upto
        out = {}
        for t in range(self.alpha(), top + 1):
            cur = self.piece(t)
            below = self.piece(t - 1).times_linear_forms() if t > 0 else GradedPiece(self.ring, 0)
            out[t] = cur.dim - below.dim
        return out

    def omega(self) -> int:
        """Largest degree of an element of a minimal homogeneous generating set."""
        key = "omega"
        if key not in self._cache:
            top = max(g.degree for g in self.generators)
            counts = self.minimal_generator_counts(top + 1)
            if counts[top + 1] != 0:
                raise AssertionError("generator beyond the certified degree bound")
            self._cache[key] = max(t for t, c in counts.items() if c > 0)
        return self._cache[key]

    def minimal_generators(self) -> list[Poly]:
        """A minimal homogeneous generating set extracted degree by degree."""
        out: list[Poly] = []
        top = max(g.degree for g in self.generators)
        for t in range(self.alpha(), top + 1):
            below = self.piece(t - 1).times_linear_forms() if t > 0 else GradedPiece(self.ring, 0)
            out.extend(complement_basis(below, self.piece(t)))
        return out

    def reg_points(self, colength: int | None = None) -> int:
        """Least t > 0 with dim(R/I)_t = dim(R/I)_{t-1}, for 0-dimensional I.

        ``colength`` (the degree of the scheme) defaults to the attached
        scheme's degree and is used to certify that the Hilbert function has
        really stabilized.
        """
        if colength is None:
            if self.scheme is None:
                raise ValueError("colength unknown: pass it or attach a scheme")
            colength = self.scheme.degree
        prev = self.hilbert(0)
        t = 1
        while True:
            h = self.hilbert(t)
            if h > colength:
                raise ValueError("not 0-dimensional: Hilbert function exceeds the colength")
            if h == prev:
                if h != colength:
                    raise ValueError("not 0-dimensional: Hilbert function stalls below the colength")
                return t
            prev = h
            t += 1

    def truncate(self, d: int) -> "Ideal":
        """The ideal generated by all I_t with t >= d, i.e. I meet M^d."""
        if d < 0:
            raise ValueError("d must be >= 0")
        if d == 0 or self.is_zero():
            return self
        if self.unit:
            return Ideal(_monomials_as_polys(self.ring, d), self.ring)
        gens = list(self.piece(d, "span").basis) + [g for g in self.generators if g.degree > d]
        return Ideal(gens, self.ring)

    def graded_equal(self, other: "Ideal", upto: int) -> bool:
        return all(self.piece(t) == other.piece(t) for t in range(upto + 1))


def complement_basis(sub: GradedPiece, whole: GradedPiece) -> list[Poly]:
    """Elements of ``whole``'s basis extending a basis of ``sub`` (sub inside whole)."""
    out = []
    cur = sub
    for row in whole.matrix:
        if not cur.contains_vector(row):
            out.append(vector_to_poly(row, whole.degree, whole.ring))
            cur = GradedPiece(whole.ring, whole.degree, np.vstack([cur.matrix, row[None, :]]))
    return out


def _products(gens: Sequence[Poly], e: int) -> list[Poly]:
    out = []
    for combo in combinations_with_replacement(range(len(gens)), e):
        f = gens[combo[0]]
        for i in combo[1:]:
            f = f * gens[i]
        out.append(f)
    return out


def _monomials_as_polys(ring: Ring, d: int) -> list[Poly]:
    return [ring.monomial(e) for e in monomials_of_degree(d)]


def point_ideal(ring: Ring, point) -> Ideal:
    """The ideal of a point of P^2: two independent linear forms vanishing there."""
    F = ring.field
    row = np.array([[F(c) for c in point]], dtype=F.dtype) if F.dtype is not object else _obj_row(F, point)
    k = kernel_array(row, F)
    return Ideal([vector_to_poly(v, 1, ring) for v in k], ring)


def _obj_row(F, point):
    a = np.empty((1, len(point)), dtype=object)
    for i, c in enumerate(point):
        a[0, i] = F(c)
    return a


def span_rank(polys: Sequence[Poly], t: int) -> int:
    if not polys:
        return 0
    F = polys[0].ring.field
    return rank_array(np.array([poly_to_vector(f, t) for f in polys], dtype=F.dtype), F)
