import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from resurgence.algebra import GF, QQ, Matrix, kernel_basis, parse_field, rank, rref

from conftest import SMALL_PRIME


def test_rref_identity():
    m, piv, rk = rref(Matrix.identity(QQ, 2))
    assert m == Matrix.identity(QQ, 2)
    assert piv == [0, 1] and rk == 2


def test_rref_dependent_rows():
    m, piv, rk = rref(Matrix(QQ, [[1, 2], [2, 4]]))
    assert m.tolist() == [[1, 2], [0, 0]]
    assert rk == 1 and piv == [0]


def test_rref_empty():
    m, piv, rk = rref(Matrix(QQ, [], 0))
    assert rk == 0 and piv == []


def test_rank_of_constructed_product():
    # 20x12 times 12x30 with random factors over a large prime has rank 12
    F = GF()
    rng = random.Random(5)
    A = Matrix(F, [[rng.randrange(F.p) for _ in range(12)] for _ in range(20)])
    B = Matrix(F, [[rng.randrange(F.p) for _ in range(30)] for _ in range(12)])
    assert rank(A) == 12 and rank(B) == 12
    assert rank(A @ B) == 12


def test_kernel_identity_and_zero():
    assert kernel_basis(Matrix.identity(QQ, 3)) == []
    assert len(kernel_basis(Matrix.zero(QQ, 2, 3))) == 3


def test_kernel_conics_through_five_points():
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3)]
    rows = [[x * x, x * y, x * z, y * y, y * z, z * z] for x, y, z in pts]
    for F in (QQ, GF()):
        M = Matrix(F, rows)
        k = kernel_basis(M)
        assert len(k) == 1
        assert all(v == 0 for v in M @ k[0])


def test_fp_canonical_representatives():
    F = GF(7)
    assert F(-1) == 6
    assert F(Fraction(1, 2)) == 4
    with pytest.raises(ZeroDivisionError):
        F(Fraction(1, 7))


def test_parse_field():
    assert parse_field("rational") is QQ
    assert parse_field("p:2147483647").p == 2**31 - 1
    with pytest.raises(ValueError):
        parse_field("p:15")
    with pytest.raises(ValueError):
        parse_field("reals")


def test_big_prime_uses_object_arrays():
    F = GF(2**61 - 1)
    assert F.dtype is object
    M = Matrix(F, [[1, 2], [3, 4]])
    assert rank(M) == 2


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices, st.sampled_from(["qq", "fp"]))
def test_rank_equals_transpose_rank(rows, which):
    F = QQ if which == "qq" else GF(SMALL_PRIME)
    M = Matrix(F, rows)
    assert rank(M) == rank(M.transpose())


@given(matrices, st.sampled_from(["qq", "fp"]))
def test_kernel_vectors_are_annihilated(rows, which):
    F = QQ if which == "qq" else GF(SMALL_PRIME)
    M = Matrix(F, rows)
    k = kernel_basis(M)
    assert len(k) == M.cols - rank(M)
    for v in k:
        assert all(x == 0 for x in M @ v)


@given(matrices, st.sampled_from(["qq", "fp"]))
def test_rref_idempotent(rows, which):
    F = QQ if which == "qq" else GF(SMALL_PRIME)
    m1, piv1, _ = rref(Matrix(F, rows))
    m2, piv2, _ = rref(m1)
    assert m1 == m2 and piv1 == piv2


@given(matrices)
def test_rref_preserves_row_space(rows):
    M = Matrix(QQ, rows)
    R, _, rk = rref(M)
    stacked = Matrix(QQ, np.vstack([M.data, R.data]))
    assert rank(stacked) == rk
