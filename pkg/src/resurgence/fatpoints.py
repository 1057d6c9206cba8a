"""Point configurations, fat-point schemes and their ideals.

Vanishing to order m at a point p is imposed in an affine chart where p
has a coordinate equal to 1: all Hasse derivatives of order <= m-1 in the
two remaining variables vanish at p.  This is the definition of the local
vanishing order and holds in every characteristic.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from .algebra import Field, GF, kernel_array, rank_array, zeros
from .ideals import GradedPiece, Ideal, ambient_dim, complement_basis, point_ideal
from .poly import Poly, Ring, monomials_of_degree, plane_ring

log = logging.getLogger(__name__)

KINDS = ("conic", "generic", "explicit")


class GenericityError(RuntimeError):
    """No sample passed the genericity battery within the retry budget."""


def conic_form(ring: Ring) -> Poly:
    """The fixed smooth conic y^2 - xz."""
    x, y, z = ring.gens()
    return y * y - x * z


@dataclass(frozen=True)
class PointConfig:
    """Resolved points of P^2 over ``field``; ``kind`` records how they were made."""

    kind: str
    points: tuple[tuple, ...]
    field: Field
    params: tuple | None = None
    seed: int | None = None
    attempts: int = 1

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def ring(self) -> Ring:
        return plane_ring(self.field)

    def describe(self) -> dict:
        out = {"kind": self.kind, "n": self.n, "field": self.field.spec()}
        if self.params is not None:
            out["params"] = [self.field.to_int_or_str(t) for t in self.params]
        if self.seed is not None:
            out["seed"] = self.seed
            out["attempts"] = self.attempts
        if self.kind == "explicit":
            out["points"] = [[self.field.to_int_or_str(c) for c in p] for p in self.points]
        return out


def _det3(F: Field, a, b, c):
    d = (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )
    return F.norm(d)


def _matrix(F: Field, rows) -> np.ndarray:
    if F.dtype is object:
        out = np.empty((len(rows), len(rows[0])), dtype=object)
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                out[i, j] = F(v)
        return out
    return np.array([[F(v) for v in r] for r in rows], dtype=F.dtype)


def points_distinct(F: Field, pts) -> bool:
    for p, q in combinations(pts, 2):
        if rank_array(_matrix(F, [p, q]), F) < 2:
            return False
    return True


def no_three_collinear(F: Field, pts) -> bool:
    return all(_det3(F, a, b, c) != 0 for a, b, c in combinations(pts, 3))


def _conic_row(F: Field, p):
    x, y, z = p
    return [x * x, x * y, x * z, y * y, y * z, z * z]


def no_six_on_conic(F: Field, pts) -> bool:
    return all(rank_array(_matrix(F, [_conic_row(F, p) for p in six]), F) == 6 for six in combinations(pts, 6))


def _validate_points(F: Field, pts):
    for p in pts:
        if len(p) != 3:
            raise ValueError("points need three homogeneous coordinates")
        if all(F(c) == 0 for c in p):
            raise ValueError("(0:0:0) is not a point")
    if not points_distinct(F, pts):
        raise ValueError("configuration has repeated points")


def make_config(
    kind: str,
    n: int | None = None,
    *,
    field: Field | None = None,
    params: Sequence | None = None,
    seed: int | None = None,
    points: Sequence[Sequence] | None = None,
    check_m: int = 1,
    max_retries: int = 64,
) -> PointConfig:
    """Build and validate a configuration.

    conic: point i is (1 : t_i : t_i^2), t_i defaulting to 0, 1, ..., n-1.
    generic: seeded pseudorandom points, resampled until the genericity
    battery passes for uniform multiplicities up to ``check_m``.
    explicit: the given coordinate triples.
    """
    F = field or GF()
    if kind == "conic":
        if params is None:
            if n is None or n < 1:
                raise ValueError("conic configuration needs n >= 1")
            params = list(range(n))
        elif n is not None and n != len(params):
            raise ValueError("n does not match the parameter list")
        ts = tuple(F(t) for t in params)
        pts = tuple((F(1), t, F.norm(t * t)) for t in ts)
        _validate_points(F, pts)
        return PointConfig("conic", pts, F, params=ts)
    if kind == "explicit":
        if not points:
            raise ValueError("explicit configuration needs points")
        pts = tuple(tuple(F(c) for c in p) for p in points)
        _validate_points(F, pts)
        return PointConfig("explicit", pts, F)
    if kind == "generic":
        if n is None or n < 1:
            raise ValueError("generic configuration needs n >= 1")
        seed = 0 if seed is None else seed
        rng = random.Random(seed)
        for attempt in range(1, max_retries + 1):
            pts = tuple(_random_point(F, rng) for _ in range(n))
            cfg = PointConfig("generic", pts, F, seed=seed, attempts=attempt)
            if genericity_battery(cfg, check_m):
                return cfg
            log.info("generic sample %d (seed %s) failed the battery; resampling", attempt, seed)
        raise GenericityError(f"no generic sample for n={n} within {max_retries} attempts")
    raise ValueError(f"unknown configuration kind {kind!r}")


def _random_point(F: Field, rng: random.Random):
    if F.characteristic:
        return (F(1), F(rng.randrange(F.characteristic)), F(rng.randrange(F.characteristic)))
    return (F(1), F(Fraction(rng.randint(-50, 50), rng.randint(1, 20))), F(Fraction(rng.randint(-50, 50), rng.randint(1, 20))))


def genericity_battery(cfg: PointConfig, check_m: int = 1) -> bool:
    """Distinct, no three collinear, no six on a conic, and for n <= 9 the
    Hilbert function of I(mZ) equals the expected general value for every
    m <= check_m and every degree t <= 3m + 1."""
    from .divisors import DivClass, expected_h0

    F, pts = cfg.field, cfg.points
    if not (points_distinct(F, pts) and no_three_collinear(F, pts) and no_six_on_conic(F, pts)):
        return False
    if cfg.n > 9:
        return True
    for m in range(1, check_m + 1):
        Z = FatPointScheme(cfg, (m,) * cfg.n)
        for t in range(0, 3 * m + 2):
            if Z.piece(t).dim != expected_h0(DivClass.uniform(t, m, cfg.n)):
                return False
    return True


# ---------------------------------------------------------------------------
# vanishing conditions


@lru_cache(maxsize=None)
def _local_indices(m: int, chart: int) -> tuple[tuple[int, int, int], ...]:
    """Multi-indices of order <= m-1 not involving the chart variable."""
    out = []
    for total in range(m):
        for e in monomials_of_degree(total):
            if e[chart] == 0:
                out.append(e)
    return tuple(out)


def _normalize(F: Field, p) -> tuple[int, tuple]:
    for j, c in enumerate(p):
        if c != 0:
            inv = F.inv(c)
            return j, tuple(F.norm(v * inv) for v in p)
    raise ValueError("zero point")


def condition_rows(F: Field, p, mult: int, t: int) -> list[list]:
    """Rows expressing that a degree-t form vanishes to order ``mult`` at p."""
    if mult <= 0:
        return []
    chart, q = _normalize(F, p)
    mons = monomials_of_degree(t)
    pw = [[F.norm(c**e) if e else F.one for e in range(t + 1)] for c in q]
    rows = []
    for a in _local_indices(mult, chart):
        row = []
        for b in mons:
            if b[0] < a[0] or b[1] < a[1] or b[2] < a[2]:
                row.append(0)
                continue
            v = comb(b[0], a[0]) * comb(b[1], a[1]) * comb(b[2], a[2])
            v = v * pw[0][b[0] - a[0]] * pw[1][b[1] - a[1]] * pw[2][b[2] - a[2]]
            row.append(F.norm(v))
        rows.append(row)
    return rows


@dataclass(frozen=True, eq=False)
class FatPointScheme:
    """Z = m_1 p_1 + ... + m_n p_n."""

    config: PointConfig
    multiplicities: tuple[int, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        mults = tuple(int(v) for v in self.multiplicities)
        object.__setattr__(self, "multiplicities", mults)
        if len(mults) != self.config.n:
            raise ValueError("one multiplicity per point required")
        if any(v < 0 for v in mults):
            raise ValueError("multiplicities must be nonnegative")

    @classmethod
    def uniform(cls, config: PointConfig, m: int = 1) -> "FatPointScheme":
        return cls(config, (m,) * config.n)

    @property
    def n(self) -> int:
        return self.config.n

    @property
    def field(self) -> Field:
        return self.config.field

    @property
    def ring(self) -> Ring:
        return self.config.ring

    @property
    def is_uniform(self) -> bool:
        return len(set(self.multiplicities)) == 1

    @property
    def is_zero(self) -> bool:
        return not any(self.multiplicities)

    @property
    def degree(self) -> int:
        """Length of the scheme, sum C(m_i + 1, 2)."""
        return sum(comb(v + 1, 2) for v in self.multiplicities)

    def scaled(self, m: int) -> "FatPointScheme":
        if m == 1:
            return self
        key = ("scaled", m)
        if key not in self._cache:
            self._cache[key] = FatPointScheme(self.config, tuple(m * v for v in self.multiplicities))
        return self._cache[key]

    def __add__(self, other: "FatPointScheme") -> "FatPointScheme":
        if other.config is not self.config and other.config != self.config:
            raise ValueError("schemes on different configurations")
        return FatPointScheme(self.config, tuple(a + b for a, b in zip(self.multiplicities, other.multiplicities)))

    def conditions(self, t: int) -> np.ndarray:
        rows = []
        for p, mult in zip(self.config.points, self.multiplicities):
            rows.extend(condition_rows(self.field, p, mult, t))
        if not rows:
            return zeros(self.field, (0, ambient_dim(t)))
        return _matrix(self.field, rows)

    def piece(self, t: int) -> GradedPiece:
        """I(Z)_t as the kernel of the vanishing conditions."""
        key = ("piece", t)
        if key not in self._cache:
            if t < 0:
                self._cache[key] = GradedPiece(self.ring, 0)
            else:
                k = kernel_array(self.conditions(t), self.field)
                self._cache[key] = GradedPiece(self.ring, t, k)
        return self._cache[key]

    def hilbert(self, t: int) -> int:
        """dim (R/I(Z))_t."""
        return ambient_dim(t) - self.piece(t).dim

    def reg(self) -> int:
        """Least t > 0 with equal consecutive Hilbert function values."""
        if "reg" not in self._cache:
            if self.is_zero:
                raise ValueError("zero scheme")
            prev, t = self.hilbert(0), 1
            while True:
                h = self.hilbert(t)
                if h == prev:
                    if h != self.degree:
                        raise AssertionError("Hilbert function stalled below the scheme degree")
                    break
                prev, t = h, t + 1
            self._cache["reg"] = t
        return self._cache["reg"]

    def ideal(self) -> Ideal:
        return fat_ideal(self)

    def describe(self) -> dict:
        return {"config": self.config.describe(), "multiplicities": list(self.multiplicities)}


def graded_piece(Z: FatPointScheme, t: int) -> GradedPiece:
    if t < 0:
        raise ValueError("degree must be >= 0")
    return Z.piece(t)


def fat_ideal(Z: FatPointScheme, verify_saturated: bool = False) -> Ideal:
    """Minimal generators of I(Z), extracted degree by degree through reg + 1.

    Castelnuovo-Mumford: I(Z) is generated in degrees <= reg; the scan
    continues one degree further and asserts nothing new appears.
    """
    if Z.is_zero:
        raise ValueError("zero scheme has the unit ideal")
    if "ideal" in Z._cache:
        return Z._cache["ideal"]
    top = Z.reg() + 1
    gens: list[Poly] = []
    for t in range(1, top + 1):
        below = Z.piece(t - 1).times_linear_forms()
        new = complement_basis(below, Z.piece(t))
        if t == top and new:
            raise AssertionError(f"generator in degree {t} beyond reg")
        gens.extend(new)
    I = Ideal(gens, Z.ring, scheme=Z)
    if verify_saturated:
        plain = Ideal(gens, Z.ring)
        if not plain.saturate_irrelevant() == plain:
            raise AssertionError("extracted fat-point ideal is not saturated")
    Z._cache["ideal"] = I
    return I


def symbolic_power(Z: FatPointScheme, m: int, route: str = "conditions") -> Ideal:
    """I(Z)^(m) = I(mZ).

    route "conditions": graded vanishing conditions on mZ.
    route "intersection": intersection of powers of the point ideals,
    followed by extraction of a minimal generating set.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if route == "conditions":
        return fat_ideal(Z.scaled(m))
    if route != "intersection":
        raise ValueError(f"unknown route {route!r}")
    R = Z.ring
    acc = None
    for p, mult in zip(Z.config.points, Z.multiplicities):
        if mult == 0:
            continue
        P = point_ideal(R, p).power(m * mult)
        acc = P if acc is None else acc.intersect(P)
    if acc is None:
        raise ValueError("zero scheme")
    return Ideal(acc.minimal_generators(), R)


def strip_conic_factor(V: GradedPiece, f: Poly | None = None) -> tuple[int, GradedPiece]:
    """Largest e with f^e dividing every element of V, and V / f^e."""
    if V.dim == 0:
        raise ValueError("empty piece")
    f = f if f is not None else conic_form(V.ring)
    basis = V.basis
    e = 0
    while V.degree - 2 * (e + 1) >= 0:
        divided = []
        ok = True
        for g in basis:
            q, r = g.divmod(f)
            if r:
                ok = False
                break
            divided.append(q)
        if not ok:
            break
        basis = divided
        e += 1
    reduced = GradedPiece.from_polys(V.ring, V.degree - f.degree * e, basis)
    if reduced.dim != V.dim:
        raise AssertionError("division bookkeeping failure")
    return e, reduced


def default_field(spec: str | None = None) -> Field:
    from .algebra import parse_field

    return GF() if spec is None else parse_field(spec)


__all__ = [
    "KINDS",
    "FatPointScheme",
    "GenericityError",
    "PointConfig",
    "conic_form",
    "default_field",
    "fat_ideal",
    "genericity_battery",
    "graded_piece",
    "make_config",
    "strip_conic_factor",
    "symbolic_power",
]
