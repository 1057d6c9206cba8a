"""Divisor classes on the blowup of P^2 at n points.

A class aL - m_1 E_1 - ... - m_n E_n is stored as ``DivClass(a, (m_1, ..., m_n))``.
The pairing is L.L = 1, E_i.E_i = -1, all other products zero, and the
canonical class is K = -3L + sum E_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence


@dataclass(frozen=True)
class DivClass:
    a: int
    m: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))
        object.__setattr__(self, "a", int(self.a))

    @property
    def n(self) -> int:
        return len(self.m)

    @classmethod
    def line(cls, n: int) -> "DivClass":
        return cls(1, (0,) * n)

    @classmethod
    def exceptional(cls, i: int, n: int) -> "DivClass":
        """E_i (0-based index)."""
        m = [0] * n
        m[i] = -1
        return cls(0, tuple(m))

    @classmethod
    def uniform(cls, t: int, mult: int, n: int) -> "DivClass":
        return cls(t, (mult,) * n)

    def _check(self, other: "DivClass"):
        if self.n != other.n:
            raise ValueError(f"class size mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "DivClass") -> "DivClass":
        self._check(other)
        return DivClass(self.a + other.a, tuple(x + y for x, y in zip(self.m, other.m)))

    def __sub__(self, other: "DivClass") -> "DivClass":
        return self + (-other)

    def __neg__(self) -> "DivClass":
        return DivClass(-self.a, tuple(-x for x in self.m))

    def __rmul__(self, k: int) -> "DivClass":
        return DivClass(k * self.a, tuple(k * x for x in self.m))

    def dot(self, other: "DivClass") -> int:
        return pair(self, other)

    def square(self) -> int:
        return pair(self, self)

    def is_uniform(self) -> bool:
        return len(set(self.m)) <= 1

    def as_list(self) -> list[int]:
        return [self.a, *self.m]

    def __str__(self):
        parts = [f"{self.a}L"]
        for i, v in enumerate(self.m, 1):
            if v == 0:
                continue
            sign = "-" if v > 0 else "+"
            coeff = "" if abs(v) == 1 else str(abs(v))
            parts.append(f" {sign} {coeff}E{i}")
        return "".join(parts)


def pair(F: DivClass, G: DivClass) -> int:
    """Intersection number a_F a_G - sum m_i n_i."""
    F._check(G)
    return F.a * G.a - sum(x * y for x, y in zip(F.m, G.m))


def canonical(n: int) -> DivClass:
    return DivClass(-3, (-1,) * n)


def conic_class(n: int) -> DivClass:
    """Q = 2L - E_1 - ... - E_n."""
    return DivClass(2, (1,) * n)


def chi(F: DivClass) -> int:
    """Riemann-Roch count (F^2 - F.K)/2 + 1."""
    val = F.square() - pair(F, canonical(F.n))
    return val // 2 + 1


def class_of(multiplicities: Sequence[int] | object, t: int) -> DivClass:
    """F_t(Z) = tL - sum m_i E_i; accepts a multiplicity list or a scheme."""
    mults = getattr(multiplicities, "multiplicities", multiplicities)
    return DivClass(t, tuple(mults))


# ---------------------------------------------------------------------------
# Cremona reduction


@dataclass(frozen=True)
class CremonaStep:
    op: str  # "quadratic" or "zero"
    indices: tuple[int, ...]
    k: int
    before: DivClass
    after: DivClass

    def to_dict(self) -> dict:
        return {
            "op": self.op,
            "indices": list(self.indices),
            "k": self.k,
            "before": self.before.as_list(),
            "after": self.after.as_list(),
        }


def quadratic_step(F: DivClass, idx: Sequence[int]) -> tuple[DivClass, int]:
    """Standard quadratic transformation based at the three given points."""
    i, j, l = idx
    k = F.a - F.m[i] - F.m[j] - F.m[l]
    m = list(F.m)
    for c in (i, j, l):
        m[c] += k
    return DivClass(F.a + k, tuple(m)), k


def _sorted(F: DivClass) -> DivClass:
    return DivClass(F.a, tuple(sorted(F.m, reverse=True)))


def cremona_reduce(F: DivClass) -> tuple[DivClass, list[CremonaStep]]:
    """Reduce to a class with a >= m_1 + m_2 + m_3 (m sorted, nonnegative) or a < 0.

    Negative multiplicities mean fixed exceptional components; they are
    zeroed, which does not change h^0, and recorded in the transcript.
    """
    if F.n < 3:
        raise ValueError("Cremona reduction needs n >= 3")
    steps: list[CremonaStep] = []
    cur = F
    while True:
        neg = tuple(i for i, v in enumerate(cur.m) if v < 0)
        if neg:
            nxt = DivClass(cur.a, tuple(max(v, 0) for v in cur.m))
            steps.append(CremonaStep("zero", neg, 0, cur, nxt))
            cur = nxt
        cur = _sorted(cur)
        if cur.a < 0:
            break
        nxt, k = quadratic_step(cur, (0, 1, 2))
        if k >= 0:
            break
        steps.append(CremonaStep("quadratic", (0, 1, 2), k, cur, nxt))
        cur = nxt
    return cur, steps


def _pad(F: DivClass, size: int) -> DivClass:
    return DivClass(F.a, F.m + (0,) * (size - F.n)) if F.n < size else F


# ---------------------------------------------------------------------------
# (-1)-classes


_MINUS_ONE_CACHE: dict[int, tuple[DivClass, ...]] = {}


def minus_one_classes(n: int) -> list[DivClass]:
    """All classes E with E^2 = -1 and E.K = -1, for 1 <= n <= 8.

    Computed as the orbit of the E_i under quadratic transformations on
    every triple of indices (for n < 3 the orbit is computed in n = 3 and
    restricted to classes supported on the first n coordinates).
    """
    if not 1 <= n <= 8:
        raise ValueError("minus_one_classes supports 1 <= n <= 8")
    if n in _MINUS_ONE_CACHE:
        return list(_MINUS_ONE_CACHE[n])
    size = max(n, 3)
    seen = {DivClass.exceptional(i, size) for i in range(size)}
    frontier = list(seen)
    triples = list(combinations(range(size), 3))
    while frontier:
        nxt = []
        for E in frontier:
            for tr in triples:
                G, _ = quadratic_step(E, tr)
                if G not in seen:
                    seen.add(G)
                    nxt.append(G)
        frontier = nxt
    out = [DivClass(E.a, E.m[:n]) for E in seen if all(v == 0 for v in E.m[n:])]
    out.sort(key=lambda E: (E.a, [-v for v in E.m]))
    _MINUS_ONE_CACHE[n] = tuple(out)
    return out


# ---------------------------------------------------------------------------
# nefness and effectivity


CONTEXTS = ("general", "conic")


def is_nef(F: DivClass, context: str = "general") -> bool:
    """Nefness on the blowup at general points (n <= 9) or points on a smooth conic (n >= 5).

    general, n <= 8: nonnegative against every (-1)-class (and L - E_1 for n = 1,
    a >= 0 for n = 0).  general, n = 9: uniform classes only, tL - m sum E is
    nef iff t >= 3m and m >= 0.  conic: nonnegative against E_i, L - E_i - E_j
    and the conic Q = 2L - sum E_i.
    """
    n = F.n
    if context == "general":
        if n == 0:
            return F.a >= 0
        if n == 1:
            return F.m[0] >= 0 and F.a - F.m[0] >= 0
        if n <= 8:
            return all(pair(F, E) >= 0 for E in minus_one_classes(n))
        if n == 9:
            if not F.is_uniform():
                raise ValueError("n = 9 nef test supports uniform classes only")
            return F.m[0] >= 0 and F.a >= 3 * F.m[0]
        raise ValueError("general nef test supports n <= 9")
    if context == "conic":
        if n < 5:
            raise ValueError("conic nef test needs n >= 5")
        if any(v < 0 for v in F.m):
            return False
        top = sorted(F.m, reverse=True)
        if F.a - top[0] - top[1] < 0:
            return False
        return pair(F, conic_class(n)) >= 0
    raise ValueError(f"unknown context {context!r}")


def nef_threshold(multiplicities: Sequence[int], context: str = "general") -> int:
    """Least t >= 0 with F_t nef (nefness is monotone in t since L is nef)."""
    mults = tuple(multiplicities)
    t = 0
    while not is_nef(DivClass(t, mults), context):
        t += 1
        if t > 3 * sum(abs(v) for v in mults) + 3:
            raise AssertionError("nef threshold search did not terminate")
    return t


def expected_h0(F: DivClass, context: str = "general") -> int:
    """h^0 of F on the blowup at general points.

    n <= 8: Cremona-reduce to standard form (such classes are nef on a
    del Pezzo surface, so h^0 = chi), or 0 once the degree goes negative.
    n = 9, uniform: peel off copies of the anticanonical cubic while
    F.(-K) < 0, then chi.
    """
    if context != "general":
        raise ValueError("expected_h0 is defined for general points only")
    n = F.n
    if n <= 8:
        G, _ = cremona_reduce(_pad(F, 3))
        if G.a < 0:
            return 0
        return chi(G)
    if n == 9:
        if not F.is_uniform():
            raise ValueError("n = 9 supports uniform classes only")
        t, m = F.a, F.m[0]
        if m < 0:
            m = 0
        while m > 0 and t < 3 * m:
            t, m = t - 3, m - 1
        if t < 0:
            return 0
        return chi(DivClass.uniform(t, m, 9))
    raise ValueError("expected_h0 supports n <= 9")


def is_effective_general(F: DivClass) -> bool:
    return effectivity_certificate(F)["effective"]


def effectivity_certificate(F: DivClass) -> dict:
    """Decide effectivity for general n <= 8 and return the Cremona transcript."""
    if not 1 <= F.n <= 8:
        raise ValueError("effectivity test supports 1 <= n <= 8")
    G, steps = cremona_reduce(_pad(F, 3))
    effective = G.a >= 0 and chi(G) >= 1
    return {
        "class": F.as_list(),
        "reduced": G.as_list(),
        "h0": chi(G) if G.a >= 0 else 0,
        "effective": effective,
        "steps": [s.to_dict() for s in steps],
    }
