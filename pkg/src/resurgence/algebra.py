"""Exact scalar fields and dense exact linear algebra.

Two backends are provided: the rationals (``QQ``) and prime fields
(``GF(p)``).  Matrices are stored as numpy arrays; over a prime field with
``p*p < 2**63`` they use ``int64`` (every product of two canonical
representatives fits), otherwise an ``object`` array of Python ints or
``Fraction`` values.  Nothing here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

MERSENNE_31 = 2**31 - 1


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 2**32:
        if p % 2 == 0:
            return p == 2
        i = 3
        while i * i <= p:
            if p % i == 0:
                return False
            i += 2
        return True
    from sympy import isprime

    return bool(isprime(p))


class Field:
    """Base class for the two scalar backends."""

    characteristic: int
    dtype: object

    def __call__(self, value):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def norm(self, a):
        return a

    def norm_array(self, arr: np.ndarray) -> np.ndarray:
        return arr

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def to_int_or_str(self, a):
        """JSON-friendly rendering of an element."""
        raise NotImplementedError

    def spec(self) -> str:
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash((type(self).__name__, self.characteristic))


class RationalField(Field):
    characteristic = 0
    dtype = object

    def __call__(self, value):
        if isinstance(value, str):
            return Fraction(value)
        return Fraction(value)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def to_int_or_str(self, a):
        a = Fraction(a)
        return a.numerator if a.denominator == 1 else str(a)

    def signed(self, a):
        return Fraction(a)

    def spec(self) -> str:
        return "rational"

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.characteristic = p
        self.dtype = np.int64 if p * p < 2**63 else object

    @property
    def p(self) -> int:
        return self.characteristic

    def __call__(self, value):
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def inv(self, a):
        if a % self.characteristic == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(int(a), -1, self.characteristic)

    def norm(self, a):
        return a % self.characteristic

    def norm_array(self, arr):
        return arr % self.characteristic

    def signed(self, a):
        """Symmetric representative in (-p/2, p/2]."""
        p = self.characteristic
        a %= p
        return a - p if a > p // 2 else a

    def to_int_or_str(self, a):
        return int(a) % self.characteristic

    def spec(self) -> str:
        return f"p:{self.characteristic}"

    def __repr__(self):
        return f"GF({self.characteristic})"


QQ = RationalField()


def GF(p: int = MERSENNE_31) -> PrimeField:
    return PrimeField(p)


def parse_field(text: str) -> Field:
    """Parse ``rational``/``QQ`` or ``p:<prime>``."""
    t = text.strip().lower()
    if t in ("rational", "qq", "q"):
        return QQ
    if t.startswith("p:"):
        try:
            return GF(int(t[2:]))
        except ValueError as exc:
            raise ValueError(f"bad field spec {text!r}: {exc}") from None
    raise ValueError(f"bad field spec {text!r}; expected 'rational' or 'p:<prime>'")


# ---------------------------------------------------------------------------
# arrays


def as_array(field: Field, rows, ncols: int | None = None) -> np.ndarray:
    """Coerce nested sequences into a canonical 2-D array over ``field``."""
    if isinstance(rows, np.ndarray) and rows.ndim == 2:
        if rows.dtype == field.dtype:
            return field.norm_array(rows.copy())
        rows = rows.tolist()
    rows = [list(r) for r in rows]
    if not rows:
        return np.zeros((0, ncols or 0), dtype=field.dtype)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    if field.dtype is object:
        out = np.empty((len(rows), width), dtype=object)
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                out[i, j] = field(v)
        return out
    return np.array([[field(v) for v in r] for r in rows], dtype=field.dtype)


def zeros(field: Field, shape) -> np.ndarray:
    if field.dtype is object:
        out = np.empty(shape, dtype=object)
        out.fill(field.zero)
        return out
    return np.zeros(shape, dtype=field.dtype)


def rref_array(a: np.ndarray, field: Field) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of a copy of ``a``; zero rows are dropped."""
    a = field.norm_array(np.array(a, dtype=field.dtype, copy=True))
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        piv = a[r, c]
        if piv != 1:
            a[r] = field.norm_array(a[r] * field.inv(piv))
        col = a[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            a[others] = field.norm_array(a[others] - np.outer(col[others], a[r]))
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_array(a: np.ndarray, field: Field) -> int:
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    return len(rref_array(a, field)[1])


def kernel_array(a: np.ndarray, field: Field) -> np.ndarray:
    """Rows form a basis of the right null space of ``a``."""
    ncols = a.shape[1]
    if a.shape[0] == 0:
        out = zeros(field, (ncols, ncols))
        for i in range(ncols):
            out[i, i] = field.one
        return out
    r, pivots = rref_array(a, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = zeros(field, (len(free), ncols))
    for k, f in enumerate(free):
        out[k, f] = field.one
        for i, pc in enumerate(pivots):
            out[k, pc] = field.norm(-r[i, f])
    return out


def matmul_exact(a: np.ndarray, b: np.ndarray, field: Field) -> np.ndarray:
    """Exact product; int64 inputs are widened so sums cannot overflow."""
    if field.dtype is object:
        return field.norm_array(a.dot(b))
    return field.norm_array(a.astype(object).dot(b.astype(object))).astype(np.int64)


def row_space_contains(basis_rref: np.ndarray, pivots: Sequence[int], v: np.ndarray, field: Field) -> bool:
    """Membership of ``v`` in the row space of an rref basis with the given pivots."""
    v = field.norm_array(np.array(v, dtype=field.dtype, copy=True))
    for i, pc in enumerate(pivots):
        c = v[pc]
        if c:
            v = field.norm_array(v - c * basis_rref[i])
    return not np.any(v)


# ---------------------------------------------------------------------------
# public matrix type


class Matrix:
    """Dense matrix over an exact field (immutable by convention)."""

    __slots__ = ("field", "data")

    def __init__(self, field: Field, rows, ncols: int | None = None):
        self.field = field
        self.data = as_array(field, rows, ncols)
        self.data.setflags(write=False)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, zeros(field, (rows, cols)))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i, j]

    def tolist(self) -> list[list]:
        return [[self.field.norm(x) if self.field.dtype is object else int(x) for x in row] for row in self.data]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.data.T.copy())

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return Matrix(self.field, matmul_exact(self.data, other.data, self.field))
        v = as_array(self.field, [list(other)]).T
        return [x for x in matmul_exact(self.data, v, self.field)[:, 0]]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.data.shape == other.data.shape
            and bool(np.all(self.data == other.data))
        )

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.tolist()})"


def rref(m: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row echelon form, pivot columns and rank.

    The returned matrix keeps the shape of ``m`` (zero rows at the bottom).
    """
    reduced, pivots = rref_array(m.data, m.field)
    full = zeros(m.field, m.data.shape)
    full[: reduced.shape[0]] = reduced
    return Matrix(m.field, full), pivots, len(pivots)


def rank(m: Matrix) -> int:
    return rank_array(m.data, m.field)


def kernel_basis(m: Matrix) -> list[list]:
    k = kernel_array(m.data, m.field)
    if m.field.dtype is object:
        return [list(row) for row in k]
    return [[int(x) for x in row] for row in k]


def vector(field: Field, values: Iterable) -> np.ndarray:
    return as_array(field, [list(values)])[0]
