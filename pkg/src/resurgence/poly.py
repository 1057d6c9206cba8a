"""Polynomials over an exact field in the plane ring k[x, y, z].

Up to two auxiliary variables (``t``, ``u``) can be prepended for
elimination.  Monomials are exponent tuples; a :class:`Poly` is an immutable
map monomial -> nonzero coefficient.

Every monomial order is represented by an integer-valued *linear* key on
exponent vectors, so ``key(a + b) == key(a) + key(b)`` and comparing keys is
comparing monomials.  The Groebner engine leans on this.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .algebra import QQ, Field

PLANE_VARS = ("x", "y", "z")
AUX_VARS = ("t", "u")

# exponent bound for the integer encodings of monomial orders
_BITS = 12
_B = 1 << _BITS


class RingMismatch(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex`` or ``elim`` (block order eliminating the first ``k`` variables)."""

    kind: str
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.k < 1:
            raise ValueError("elimination order needs k >= 1")

    def key(self, e: tuple[int, ...]) -> int:
        return _encode(self, len(e), e)

    def decode(self, key: int, nvars: int) -> tuple[int, ...]:
        return _decode(self, nvars, key)

    def __str__(self):
        return f"elim({self.k})" if self.kind == "elim" else self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_elimination(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


def _grevlex_key(e) -> int:
    n = len(e)
    top = _B**n
    return sum(ei * (top - _B**i) for i, ei in enumerate(e))


def _grevlex_decode(key: int, n: int) -> tuple[int, ...]:
    if n == 0:
        return ()
    top = _B**n
    deg = -(-key // top)
    s = deg * top - key
    return tuple((s >> (_BITS * i)) & (_B - 1) for i in range(n))


@lru_cache(maxsize=None)
def _elim_split(n: int, k: int) -> int:
    return _B ** (n + 2)


@lru_cache(maxsize=1 << 20)
def _encode(order: MonomialOrder, n: int, e: tuple[int, ...]) -> int:
    if order.kind == "grevlex":
        return _grevlex_key(e)
    if order.kind == "lex":
        return sum(ei << (_BITS * (n - 1 - i)) for i, ei in enumerate(e))
    k = order.k
    return _grevlex_key(e[:k]) * _elim_split(n, k) + _grevlex_key(e[k:])


@lru_cache(maxsize=1 << 20)
def _decode(order: MonomialOrder, n: int, key: int) -> tuple[int, ...]:
    if order.kind == "grevlex":
        return _grevlex_decode(key, n)
    if order.kind == "lex":
        return tuple((key >> (_BITS * (n - 1 - i))) & (_B - 1) for i in range(n))
    k = order.k
    hi, lo = divmod(key, _elim_split(n, k))
    return _grevlex_decode(hi, k) + _grevlex_decode(lo, n - k)


# ---------------------------------------------------------------------------
# rings


@dataclass(frozen=True)
class Ring:
    field: Field = QQ
    names: tuple[str, ...] = PLANE_VARS

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def with_aux(self, k: int) -> "Ring":
        if not 0 <= k <= len(AUX_VARS):
            raise ValueError("at most two auxiliary variables")
        return Ring(self.field, AUX_VARS[:k] + self.names)

    def drop_leading(self, k: int) -> "Ring":
        return Ring(self.field, self.names[k:])

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        return Poly(self, {(0,) * self.nvars: self.field(c)})

    def var(self, name: str) -> "Poly":
        try:
            i = self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.var(n) for n in self.names)

    def monomial(self, e, c=1) -> "Poly":
        return Poly(self, {tuple(e): self.field(c)})

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)


def plane_ring(field: Field = QQ) -> Ring:
    return Ring(field, PLANE_VARS)


@lru_cache(maxsize=None)
def monomials_of_degree(t: int, nvars: int = 3) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of total degree ``t``, grevlex-descending."""
    if t < 0:
        return ()
    out = []

    def rec(prefix, left, k):
        if k == 1:
            out.append(prefix + (left,))
            return
        for a in range(left, -1, -1):
            rec(prefix + (a,), left - a, k - 1)

    if nvars == 0:
        return ((),) if t == 0 else ()
    rec((), t, nvars)
    out.sort(key=_grevlex_key, reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(t: int, nvars: int = 3) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(monomials_of_degree(t, nvars))}


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple[int, ...], object]):
        self.ring = ring
        F = ring.field
        clean = {}
        for e, c in terms.items():
            c = F(c)
            if c:
                if len(e) != ring.nvars:
                    raise ValueError(f"exponent {e} does not match ring {ring.names}")
                clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- basic properties ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_components(self) -> dict[int, "Poly"]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: Poly._raw(self.ring, t) for d, t in sorted(parts.items())}

    def coeff(self, e) -> object:
        return self.terms.get(tuple(e), self.ring.field.zero)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self.terms.items(), key=lambda kv: order.key(kv[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = GREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def lm(self, order: MonomialOrder = GREVLEX) -> tuple[int, ...]:
        return self.leading_term(order)[0]

    def lc(self, order: MonomialOrder = GREVLEX):
        return self.leading_term(order)[1]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Poly":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc(order)))

    def involves(self, i: int) -> bool:
        return any(e[i] for e in self.terms)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise RingMismatch(f"ring mismatch: {self.ring.names}/{self.ring.field!r} vs {other.ring.names}/{other.ring.field!r}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = F.norm(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Poly._raw(self.ring, {e: F.norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero()
        return Poly._raw(self.ring, {e: F.norm(v * c) for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        F = self.ring.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.ring, out) if F.characteristic == 0 else Poly(self.ring, {e: v % F.characteristic for e, v in out.items()})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_monomial(self, m: tuple[int, ...], c=1) -> "Poly":
        F = self.ring.field
        return Poly._raw(
            self.ring,
            {tuple(a + b for a, b in zip(e, m)): F.norm(v * c) for e, v in self.terms.items()},
        )

    def divmod(self, g: "Poly", order: MonomialOrder = GREVLEX) -> tuple["Poly", "Poly"]:
        """Division by a single polynomial: ``self == q*g + r``."""
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        F = self.ring.field
        gm, gc = g.leading_term(order)
        ginv = F.inv(gc)
        rem = dict(self.terms)
        quo: dict = {}
        out: dict = {}
        while rem:
            m = max(rem, key=order.key)
            c = rem[m]
            if all(a >= b for a, b in zip(m, gm)):
                q = tuple(a - b for a, b in zip(m, gm))
                qc = F.norm(c * ginv)
                quo[q] = F.norm(quo.get(q, 0) + qc)
                for e, v in g.terms.items():
                    ee = tuple(a + b for a, b in zip(e, q))
                    nv = F.norm(rem.get(ee, 0) - qc * v)
                    if nv:
                        rem[ee] = nv
                    else:
                        rem.pop(ee, None)
            else:
                out[m] = rem.pop(m)
        return Poly(self.ring, quo), Poly._raw(self.ring, out)

    def exact_div(self, g: "Poly") -> "Poly":
        q, r = self.divmod(g)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def evaluate(self, point) -> object:
        F = self.ring.field
        total = F.zero
        for e, c in self.terms.items():
            v = c
            for pi, ei in zip(point, e):
                if ei:
                    v = v * pi**ei
            total = total + v
        return F.norm(total)

    def embed(self, ring: Ring) -> "Poly":
        """Map into a ring whose variable list ends with this ring's variables."""
        k = ring.nvars - self.ring.nvars
        if k < 0 or ring.names[k:] != self.ring.names or ring.field != self.ring.field:
            raise RingMismatch("cannot embed into ring")
        pad = (0,) * k
        return Poly._raw(ring, {pad + e: c for e, c in self.terms.items()})

    def restrict(self, ring: Ring) -> "Poly":
        """Inverse of :meth:`embed`; the dropped leading variables must not occur."""
        k = self.ring.nvars - ring.nvars
        if k < 0 or self.ring.names[k:] != ring.names:
            raise RingMismatch("cannot restrict to ring")
        out = {}
        for e, c in self.terms.items():
            if any(e[:k]):
                raise ValueError("polynomial involves eliminated variables")
            out[e[k:]] = c
        return Poly._raw(ring, out)

    # -- comparison / display -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def format_poly(f: Poly) -> str:
    if not f.terms:
        return "0"
    F = f.ring.field
    names = f.ring.names
    parts = []
    for e, c in f.sorted_terms(GREVLEX):
        c = F.signed(c)
        neg = c < 0
        mag = -c if neg else c
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("var", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ParseError(f"expected {op!r}, found {t[1] or 'end of input'!r}", t[2])

    def expr(self) -> Poly:
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            acc = self.term()
            if t[1] == "-":
                acc = -acc
        else:
            acc = self.term()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def term(self) -> Poly:
        acc = self.power()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                acc = acc * self.power()
            elif t[0] in ("num", "var") or (t[0] == "op" and t[1] == "("):
                acc = acc * self.power()
            else:
                return acc

    def power(self) -> Poly:
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                raise ParseError("exponent must be a nonnegative integer", e[2])
            return base ** int(e[1])
        return base

    def atom(self) -> Poly:
        t = self.take()
        kind, val, pos = t
        if kind == "num":
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num":
                    raise ParseError("expected denominator", d[2])
                if int(d[1]) == 0:
                    raise ParseError("zero denominator", d[2])
                try:
                    return self.ring.const(Fraction(int(val), int(d[1])))
                except ZeroDivisionError:
                    raise ParseError("denominator vanishes in the field", d[2]) from None
            return self.ring.const(int(val))
        if kind == "var":
            if val not in self.ring.names:
                raise ParseError(f"unknown variable {val!r}", pos)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "op" and val == "-":
            return -self.power()
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse_poly(text: str, ring: Ring | None = None) -> Poly:
    """Parse ``text`` such as ``"y^2 - x*z"`` or ``"(x+y)^2 - 1/2*z^2"``."""
    ring = ring or plane_ring()
    p = _Parser(text, ring)
    if p.peek()[0] == "end":
        raise ParseError("empty input", 0)
    out = p.expr()
    t = p.peek()
    if t[0] != "end":
        raise ParseError(f"unexpected {t[1]!r}", t[2])
    return out


# ---------------------------------------------------------------------------
# Hasse derivatives


def hasse_derivative(f: Poly, a) -> Poly:
    """Divided-power derivative: x^b -> C(b, a) x^(b-a), componentwise."""
    a = tuple(a)
    if len(a) != f.ring.nvars:
        raise ValueError("derivative multi-index has wrong length")
    F = f.ring.field
    out = {}
    for b, c in f.terms.items():
        if all(bi >= ai for bi, ai in zip(b, a)):
            k = 1
            for bi, ai in zip(b, a):
                k *= comb(bi, ai)
            v = F.norm(c * k)
            if v:
                out[tuple(bi - ai for bi, ai in zip(b, a))] = v
    return Poly._raw(f.ring, out)


def multi_indices(total_max: int, nvars: int = 3) -> Iterable[tuple[int, ...]]:
    """All exponent vectors of degree <= ``total_max``."""
    for d in range(total_max + 1):
        yield from monomials_of_degree(d, nvars)
