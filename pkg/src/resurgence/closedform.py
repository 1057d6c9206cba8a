"""Closed-form containment criteria and invariant values (the predictor).

Every rational inequality is evaluated in integers after clearing
denominators.  Method ids name the rule that decided a query:

* ``conic-even-or-single``: points on a smooth conic, n even or n = 1: m >= r
* ``conic-odd``: points on a smooth conic, n > 1 odd: (n+1)r - 1 <= nm
* ``general-via-conic``: n <= 5 general points lie on a smooth conic
* ``general-n6`` .. ``general-n9``: general points, 12m >= 15r - 5,
  7m >= 8r (or m = r = 1), 12m >= 17r - 4 (or m = r = 1), 3m >= 4r - 1
* ``alpha-reg``: when alpha(I) = reg(I), containment iff alpha(I^(m)) >= r alpha(I)
* ``bound-only``: alpha/reg bounds when alpha(I) < reg(I)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

KINDS = ("conic", "general")
GENERAL_MAX_N = 9

# (kind, n) whose alpha/gamma/rho values are derived from the
# complete-intersection structure rather than stated closed forms
DERIVED_VALUES = {("general", 2), ("general", 4), ("conic", 2), ("conic", 4)}


class Unsupported(ValueError):
    """Configuration outside the predictor's range."""


class ZeroPiece(ValueError):
    """Degree below 2m: the graded piece is zero and q is undefined."""


@dataclass(frozen=True)
class Verdict:
    contains: bool | None  # None: undecided
    method: str
    certificate: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"contains": self.contains, "method": self.method, "certificate": dict(self.certificate)}


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


# ---------------------------------------------------------------------------
# q-values for points on a conic


def q_single(n: int, m: int, t: int) -> int:
    """Least s >= 0 with 2(t - 2s) >= (m - s)n: the power of the conic
    dividing I(mZ)_t for n >= 5 points on it."""
    if n < 5:
        raise Unsupported("q_single needs n >= 5")
    if t < 2 * m:
        raise ZeroPiece(f"I({m}Z)_{t} = 0 for t < 2m")
    s = 0
    while 2 * (t - 2 * s) < (m - s) * n:
        s += 1
    return s


@lru_cache(maxsize=None)
def q_power(n: int, r: int, t: int, m: int = 1) -> int:
    """Minimum of q_single(n, m, t_1) + ... + q_single(n, m, t_r) over
    t = t_1 + ... + t_r with every t_i >= 2m (dynamic programming)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if t < 2 * m * r:
        raise ZeroPiece(f"(I^{r})_{t} = 0 for t < 2mr")
    if r == 1:
        return q_single(n, m, t)
    best = None
    for t1 in range(2 * m, t - 2 * m * (r - 1) + 1):
        v = q_single(n, m, t1) + q_power(n, r - 1, t - t1, m)
        if best is None or v < best:
            best = v
    return best


def q_power_closed(n: int, r: int, t: int) -> int:
    """Closed form of q_power for m = 1 and odd n: max(0, ceil((r(n+1) - 2t)/(n-3)))."""
    if n < 5 or n % 2 == 0:
        raise Unsupported("closed form holds for odd n >= 5 only")
    if t < 2 * r:
        raise ZeroPiece("t < 2r")
    return max(0, _ceil_div(r * (n + 1) - 2 * t, n - 3))


def hilbert_conic(n: int, m: int, t: int) -> int:
    """dim I(mZ)_t for n >= 5 points on a smooth conic."""
    if n < 5:
        raise Unsupported("hilbert_conic needs n >= 5")
    if t < 2 * m:
        return 0
    q = q_single(n, m, t)
    return comb(t - 2 * q + 2, 2) - n * comb(m - q + 1, 2)


def graded_containment_conic(n: int, s: int, m: int, r: int, t: int) -> bool:
    """Whether I(msZ)_t lies in (I(sZ)^r)_t, by comparing conic-factor exponents."""
    if m < r:
        raise ValueError("criterion stated for m >= r")
    if t < 2 * m * s:
        raise ZeroPiece("t < 2ms")
    return q_power(n, r, t, s) <= q_single(n, m * s, t)


# ---------------------------------------------------------------------------
# containment criteria


def contains_conic(n: int, m: int, r: int) -> Verdict:
    if min(n, m, r) < 1:
        raise ValueError("n, m, r must be >= 1")
    if n == 1 or n % 2 == 0:
        return Verdict(m >= r, "conic-even-or-single", {"inequality": "m >= r", "lhs": m, "rhs": r})
    lhs, rhs = (n + 1) * r - 1, n * m
    return Verdict(lhs <= rhs, "conic-odd", {"inequality": "(n+1)r - 1 <= nm", "lhs": lhs, "rhs": rhs})


_GENERAL_RULES = {
    6: ("12m >= 15r - 5", lambda m, r: (12 * m, 15 * r - 5), False),
    7: ("7m >= 8r or m = r = 1", lambda m, r: (7 * m, 8 * r), True),
    8: ("12m >= 17r - 4 or m = r = 1", lambda m, r: (12 * m, 17 * r - 4), True),
    9: ("3m >= 4r - 1", lambda m, r: (3 * m, 4 * r - 1), False),
}


def contains_general(n: int, m: int, r: int) -> Verdict:
    if min(m, r) < 1:
        raise ValueError("m, r must be >= 1")
    if not 1 <= n <= GENERAL_MAX_N:
        raise Unsupported(f"general points supported for 1 <= n <= {GENERAL_MAX_N}")
    if n <= 5:
        v = contains_conic(n, m, r)
        return Verdict(v.contains, "general-via-conic", {**v.certificate, "delegated_to": v.method})
    text, rule, unit_case = _GENERAL_RULES[n]
    lhs, rhs = rule(m, r)
    ok = lhs >= rhs or (unit_case and m == r == 1)
    return Verdict(ok, f"general-n{n}", {"inequality": text, "lhs": lhs, "rhs": rhs})


def contains(kind: str, n: int, m: int, r: int) -> Verdict:
    if kind == "conic":
        return contains_conic(n, m, r)
    if kind == "general":
        return contains_general(n, m, r)
    raise Unsupported(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# invariants


_ALPHA_GENERAL = {
    1: Fraction(1),
    2: Fraction(1),
    3: Fraction(3, 2),
    4: Fraction(2),
    5: Fraction(2),
    6: Fraction(12, 5),
    7: Fraction(21, 8),
    8: Fraction(48, 17),
    9: Fraction(3),
}


def _check_kind(kind: str, n: int):
    if kind == "general":
        if not 1 <= n <= GENERAL_MAX_N:
            raise Unsupported(f"general points supported for 1 <= n <= {GENERAL_MAX_N}")
    elif kind == "conic":
        if n < 1:
            raise Unsupported("n must be >= 1")
    else:
        raise Unsupported(f"unknown kind {kind!r}")


def gamma_value(kind: str, n: int, s: int = 1) -> Fraction:
    """lim alpha(I^(m))/m for I = I(sZ)."""
    _check_kind(kind, n)
    if kind == "conic" and n >= 5:
        return Fraction(2 * s)
    if s != 1:
        raise Unsupported("sub-multiplicity s > 1 supported for conic n >= 5 only")
    # n <= 4 points on a smooth conic are general points
    return _ALPHA_GENERAL[n]


def alpha_symbolic(kind: str, n: int, m: int, s: int = 1) -> int:
    """alpha(I^(m)); every tabulated value is ceil(gamma * m)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    g = gamma_value(kind, n, s)
    return _ceil_div(g.numerator * m, g.denominator)


def resurgence(kind: str, n: int) -> Fraction:
    _check_kind(kind, n)
    if kind == "general" and n >= 6:
        return {6: Fraction(5, 4), 7: Fraction(8, 7), 8: Fraction(17, 12), 9: Fraction(4, 3)}[n]
    if n == 1 or n % 2 == 0:
        return Fraction(1)
    return Fraction(n + 1, n)


def alpha_reg_values(kind: str, n: int) -> tuple[int, int]:
    """(alpha(I), reg(I)) for simple points; reg from the Hilbert function of
    n points in general position (n <= 9) or on a smooth conic."""
    _check_kind(kind, n)
    a = alpha_symbolic(kind, n, 1)
    if kind == "conic" and n >= 5:
        # h(t) = min(n, 2t + 1) for points on a conic: stabilizes at ceil((n-1)/2) + 1
        return a, _ceil_div(n - 1, 2) + 1
    # general points: h(t) = min(n, C(t+2, 2)); first repeated value
    t = 1
    while min(n, comb(t + 1, 2)) != min(n, comb(t + 2, 2)):
        t += 1
    return a, t


def value_source(kind: str, n: int) -> str:
    return "derived" if (kind, n) in DERIVED_VALUES else "closed-form"


def rho_bounds(alpha, gamma, reg) -> tuple[Fraction, Fraction]:
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    return Fraction(alpha) / gamma, Fraction(reg) / gamma


def alpha_reg_rule(alpha_I: int, reg_I: int, alpha_sym_m: int, r: int) -> Verdict:
    cert = {"alpha": alpha_I, "reg": reg_I, "alpha_symbolic": alpha_sym_m, "r": r}
    if alpha_I == reg_I:
        return Verdict(alpha_sym_m >= r * alpha_I, "alpha-reg", cert)
    if alpha_sym_m >= r * reg_I:
        return Verdict(True, "bound-only", cert)
    if alpha_sym_m < r * alpha_I:
        return Verdict(False, "bound-only", cert)
    return Verdict(None, "bound-only", cert)


def sufficiency_bounds(m: int, r: int) -> dict:
    """The theorem m >= 2r and the conjectural m >= 2r - 1 (plane, N = 2).

    r = 1 is reported as covered by both: I^(m) is contained in I for every m >= 1.
    """
    if min(m, r) < 1:
        raise ValueError("m, r must be >= 1")
    return {"els_hoh": m >= 2 * r or r == 1, "conjecture_1_1": m >= 2 * r - 1, "conjecture_1_1_status": "conjecture"}


def approach_sequence(kind: str, n: int, count: int = 10) -> list[tuple[int, int]]:
    """Pairs (m, r) with m/r increasing to the resurgence and no containment."""
    rho = resurgence(kind, n)
    p, q = rho.numerator, rho.denominator
    return [(p * k - 1, q * k) for k in range(1, count + 1) if p * k - 1 >= 1]
