"""Buchberger's algorithm, normal forms, membership and elimination.

Internally a polynomial is a dict ``order_key -> coefficient``.  Because
order keys are additive in the exponents, multiplying by a monomial is a
constant shift of every key, and the leading monomial is ``max(dict)``.

Pairs are processed smallest lcm degree first, generators of a degree
before pairs of that degree, ties broken by generator indices.  With a
truncation degree ``D`` (homogeneous input only) pairs whose lcm has degree
above ``D`` are never formed, which yields a basis that decides membership
for every element of degree at most ``D``.
"""

from __future__ import annotations

import heapq
import logging
from functools import lru_cache
from typing import Iterable, Sequence

from .poly import GREVLEX, MonomialOrder, Poly, Ring, block_elimination

log = logging.getLogger(__name__)

_W = 13
_GUARD_BIT = 1 << (_W - 1)


class TruncationError(ValueError):
    """Query degree exceeds the truncation degree of a basis."""


def _pack(e: tuple[int, ...]) -> int:
    return sum(ei << (_W * i) for i, ei in enumerate(e))


@lru_cache(maxsize=None)
def _guard(n: int) -> int:
    return sum(_GUARD_BIT << (_W * i) for i in range(n))


class _Record:
    __slots__ = ("key", "exp", "packed", "deg", "poly")

    def __init__(self, key, exp, poly):
        self.key = key
        self.exp = exp
        self.packed = _pack(exp)
        self.deg = sum(exp)
        self.poly = poly


class _Engine:
    """Shared arithmetic for one (ring, order) pair."""

    def __init__(self, ring: Ring, order: MonomialOrder):
        self.ring = ring
        self.order = order
        self.n = ring.nvars
        self.field = ring.field
        self.p = ring.field.characteristic
        self.guard = _guard(self.n)
        self._exp_cache: dict[int, tuple[int, ...]] = {}

    def exp(self, key: int) -> tuple[int, ...]:
        e = self._exp_cache.get(key)
        if e is None:
            e = self._exp_cache[key] = self.order.decode(key, self.n)
        return e

    def encode(self, f: Poly) -> dict:
        k = self.order.key
        return {k(e): c for e, c in f.terms.items()}

    def decode(self, d: dict) -> Poly:
        return Poly._raw(self.ring, {self.exp(k): c for k, c in d.items()})

    def monic(self, d: dict) -> dict:
        lead = d[max(d)]
        if lead == 1:
            return d
        inv = self.field.inv(lead)
        if self.p:
            p = self.p
            return {k: c * inv % p for k, c in d.items()}
        return {k: c * inv for k, c in d.items()}

    def record(self, d: dict) -> _Record:
        k = max(d)
        return _Record(k, self.exp(k), d)

    def find_divisor(self, key: int, basis: Sequence[_Record]):
        e = self.exp(key)
        ep = _pack(e) | self.guard
        guard = self.guard
        for g in basis:
            if (ep - g.packed) & guard == guard:
                return g
        return None

    def reduce(self, f: dict, basis: Sequence[_Record], full: bool = True) -> dict:
        """Remainder of ``f`` modulo ``basis`` (all basis polys monic)."""
        f = dict(f)
        rem: dict = {}
        p = self.p
        find = self.find_divisor
        while f:
            m = max(f)
            g = find(m, basis)
            if g is None:
                if not full:
                    f.update(rem)
                    return f
                rem[m] = f.pop(m)
                continue
            c = f[m]
            shift = m - g.key
            get = f.get
            if p:
                for k, v in g.poly.items():
                    kk = k + shift
                    nv = (get(kk, 0) - c * v) % p
                    if nv:
                        f[kk] = nv
                    else:
                        del f[kk]
            else:
                for k, v in g.poly.items():
                    kk = k + shift
                    nv = get(kk, 0) - c * v
                    if nv:
                        f[kk] = nv
                    else:
                        del f[kk]
        return rem

    def spoly(self, a: _Record, b: _Record) -> tuple[dict, int]:
        lcm = tuple(max(x, y) for x, y in zip(a.exp, b.exp))
        lk = self.order.key(lcm)
        sa, sb = lk - a.key, lk - b.key
        out = {k + sa: v for k, v in a.poly.items()}
        p = self.p
        for k, v in b.poly.items():
            kk = k + sb
            nv = out.get(kk, 0) - v
            if p:
                nv %= p
            if nv:
                out[kk] = nv
            else:
                out.pop(kk, None)
        return out, sum(lcm)


class GroebnerBasis:
    """A (possibly degree-truncated) Groebner basis.

    ``generators`` are monic.  When ``truncation`` is set the basis is only
    guaranteed to decide membership of polynomials of degree <= truncation.
    """

    def __init__(self, ring: Ring, order: MonomialOrder, records: list[_Record], reduced: bool, truncation: int | None):
        self.ring = ring
        self.order = order
        self.reduced = reduced
        self.truncation = truncation
        self._records = records
        self._engine = _Engine(ring, order)
        self.generators: tuple[Poly, ...] = tuple(self._engine.decode(r.poly) for r in records)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    @property
    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [r.exp for r in self._records]

    def covers(self, degree: int) -> bool:
        return self.truncation is None or degree <= self.truncation

    def is_unit(self) -> bool:
        return any(r.deg == 0 for r in self._records)

    def __repr__(self):
        t = "" if self.truncation is None else f", truncation={self.truncation}"
        return f"GroebnerBasis({len(self)} polys, {self.order}{t})"


def buchberger(
    gens: Iterable[Poly],
    order: MonomialOrder = GREVLEX,
    truncation: int | None = None,
    reduced: bool = True,
    ring: Ring | None = None,
) -> GroebnerBasis:
    gens = [g for g in gens if not g.is_zero()]
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
    if truncation is not None and not all(g.is_homogeneous() for g in gens):
        raise ValueError("degree truncation requires homogeneous generators")
    eng = _Engine(ring, order)

    queue: list = []
    pending_gens = []
    for idx, g in enumerate(gens):
        d = g.degree
        if truncation is not None and d > truncation:
            continue
        pending_gens.append(eng.encode(g))
        heapq.heappush(queue, (d, 0, idx, len(pending_gens) - 1))

    basis: list[_Record] = []
    pending_pairs: set[tuple[int, int]] = set()
    n_reductions = 0

    def add(h: dict):
        rec = eng.record(eng.monic(h))
        j = len(basis)
        basis.append(rec)
        for i, other in enumerate(basis[:-1]):
            lcm_deg = sum(max(x, y) for x, y in zip(other.exp, rec.exp))
            if truncation is not None and lcm_deg > truncation:
                continue
            pending_pairs.add((i, j))
            heapq.heappush(queue, (lcm_deg, 1, i, j))

    while queue:
        item = heapq.heappop(queue)
        if item[1] == 0:
            h = eng.reduce(pending_gens[item[3]], basis)
            n_reductions += 1
            if h:
                add(h)
            continue
        _, _, i, j = item
        pending_pairs.discard((i, j))
        a, b = basis[i], basis[j]
        if all(x == 0 or y == 0 for x, y in zip(a.exp, b.exp)):
            continue
        lcm = tuple(max(x, y) for x, y in zip(a.exp, b.exp))
        if _chain_skip(i, j, lcm, basis, pending_pairs):
            continue
        s, _ = eng.spoly(a, b)
        if not s:
            continue
        h = eng.reduce(s, basis)
        n_reductions += 1
        if h:
            add(h)

    log.debug("buchberger: %d reductions, %d basis elements", n_reductions, len(basis))
    if reduced:
        basis = _interreduce(eng, basis)
    return GroebnerBasis(ring, order, basis, reduced, truncation)


def _chain_skip(i, j, lcm, basis, pending) -> bool:
    for k, g in enumerate(basis):
        if k == i or k == j:
            continue
        if all(a <= b for a, b in zip(g.exp, lcm)):
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                return True
    return False


def _interreduce(eng: _Engine, basis: list[_Record]) -> list[_Record]:
    minimal = []
    for idx, r in enumerate(basis):
        divisible = False
        for jdx, s in enumerate(basis):
            if jdx == idx:
                continue
            if all(a <= b for a, b in zip(s.exp, r.exp)) and (s.exp != r.exp or jdx < idx):
                divisible = True
                break
        if not divisible:
            minimal.append(r)
    out = []
    for idx, r in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        lead = {r.key: r.poly[r.key]}
        tail = dict(r.poly)
        del tail[r.key]
        tail = eng.reduce(tail, others) if tail else {}
        tail.update(lead)
        out.append(eng.record(tail))
    out.sort(key=lambda rec: rec.key)
    return out


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    if f.ring != G.ring:
        raise ValueError("ring mismatch")
    if f.is_zero():
        return f
    if G.truncation is not None and f.degree > G.truncation:
        raise TruncationError(f"degree {f.degree} exceeds truncation {G.truncation}")
    eng = G._engine
    return eng.decode(eng.reduce(eng.encode(f), G._records))


def reduces_to_zero(f: Poly, G: GroebnerBasis) -> bool:
    return normal_form(f, G).is_zero()


def ideal_member(f: Poly, gens: Sequence[Poly]) -> bool:
    """``f`` in the ideal generated by ``gens`` (homogeneous inputs)."""
    if f.is_zero():
        return True
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return False
    G = buchberger(gens, GREVLEX, truncation=f.degree if f.is_homogeneous() else None, ring=f.ring)
    return reduces_to_zero(f, G)


def eliminate(gens: Sequence[Poly], k: int, ring: Ring | None = None) -> list[Poly]:
    """Generators of the ideal intersected with the subring without the first ``k`` variables.

    Returned polynomials live in ``ring.drop_leading(k)``.
    """
    gens = [g for g in gens if not g.is_zero()]
    ring = ring or (gens[0].ring if gens else None)
    if ring is None:
        raise ValueError("ring required for an empty generator list")
    if ring.nvars < k:
        raise ValueError("not enough variables to eliminate")
    sub = ring.drop_leading(k)
    if not gens:
        return []
    G = buchberger(gens, block_elimination(k), ring=ring)
    return [g.restrict(sub) for g in G.generators if not any(e[:k] != (0,) * k for e in g.terms)]


def s_pairs_reduce(G: GroebnerBasis) -> bool:
    """Check the Buchberger criterion for all pairs within the truncation."""
    eng = G._engine
    recs = G._records
    for i in range(len(recs)):
        for j in range(i + 1, len(recs)):
            s, deg = eng.spoly(recs[i], recs[j])
            if G.truncation is not None and deg > G.truncation:
                continue
            if s and eng.reduce(s, recs):
                return False
    return True
