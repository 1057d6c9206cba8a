from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from resurgence.divisors import (
    DivClass,
    canonical,
    chi,
    class_of,
    conic_class,
    cremona_reduce,
    effectivity_certificate,
    expected_h0,
    is_effective_general,
    is_nef,
    minus_one_classes,
    nef_threshold,
    pair,
)
from resurgence.fatpoints import FatPointScheme, make_config

L1 = DivClass.line(1)


def solve_minus_one(n):
    """Integer solutions of a^2 - sum m^2 = -1, sum m = 3a - 1 by direct search."""
    out = set()

    def rec(prefix, left_sq, left_sum, a):
        i = len(prefix)
        if i == n:
            if left_sq == 0 and left_sum == 0:
                out.add(DivClass(a, tuple(prefix)))
            return
        lo = -1 if a == 0 else 0
        for v in range(lo, a + 1):
            if v * v <= left_sq:
                rec(prefix + [v], left_sq - v * v, left_sum - v, a)

    for a in range(0, 7):
        rec([], a * a + 1, 3 * a - 1, a)
    return out


def test_pairing_basis():
    L, E = DivClass.line(5), DivClass.exceptional(2, 5)
    assert (pair(L, L), pair(E, E), pair(L, E)) == (1, -1, 0)


@pytest.mark.parametrize("n", range(0, 10))
def test_canonical_square(n):
    assert canonical(n).square() == 9 - n


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_conic_pairing_negative(m):
    assert pair(conic_class(5), DivClass.uniform(2 * m - 1, m, 5)) == 2 * (2 * m - 1) - 5 * m < 0


@pytest.mark.parametrize("n,count", [(1, 1), (2, 3), (3, 6), (4, 10), (5, 16), (6, 27), (7, 56), (8, 240)])
def test_minus_one_counts(n, count):
    classes = minus_one_classes(n)
    assert len(classes) == len(set(classes)) == count
    assert all(E.square() == -1 and pair(E, canonical(n)) == -1 for E in classes)


@pytest.mark.parametrize("n", range(1, 9))
def test_minus_one_matches_direct_solve(n):
    assert set(minus_one_classes(n)) == solve_minus_one(n)


def test_minus_one_n2_explicit():
    assert set(minus_one_classes(2)) == {DivClass(0, (-1, 0)), DivClass(0, (0, -1)), DivClass(1, (1, 1))}


def test_minus_one_out_of_range():
    with pytest.raises(ValueError):
        minus_one_classes(9)


def test_cremona_examples():
    F = DivClass.uniform(17, 6, 8)
    G, steps = cremona_reduce(F)
    assert G == DivClass.line(8)
    assert steps[0].after == DivClass(16, (5, 5, 5, 6, 6, 6, 6, 6))
    assert steps[0].k == -1
    anti = DivClass.uniform(3, 1, 9)
    G, steps = cremona_reduce(anti)
    assert G == anti and steps == []
    with pytest.raises(ValueError):
        cremona_reduce(DivClass(3, (1, 1)))


@given(st.integers(-3, 20), st.lists(st.integers(-2, 8), min_size=3, max_size=8))
def test_cremona_steps_are_isometries(a, mults):
    F = DivClass(a, tuple(mults))
    K = canonical(F.n)
    _, steps = cremona_reduce(F)
    for s in steps:
        if s.op == "quadratic":
            assert s.after.square() == s.before.square()
            assert pair(s.after, K) == pair(s.before, K)
        else:
            assert all(v >= 0 for v in s.after.m)


@given(st.integers(0, 20), st.lists(st.integers(0, 8), min_size=3, max_size=8))
def test_cremona_terminates_in_standard_form(a, mults):
    G, _ = cremona_reduce(DivClass(a, tuple(mults)))
    m = sorted(G.m, reverse=True)
    assert G.a < 0 or (G.a >= m[0] + m[1] + m[2] and m[-1] >= 0)


def test_nef_examples():
    assert is_nef(DivClass.uniform(5, 2, 6))
    assert is_nef(DivClass.uniform(25, 10, 6))
    assert is_nef(DivClass.uniform(8, 3, 7))
    for m in range(1, 5):
        assert not is_nef(DivClass.uniform(2 * m - 1, m, 5), "conic")
    assert is_nef(DivClass.uniform(3, 1, 9)) and not is_nef(DivClass.uniform(5, 2, 9))
    with pytest.raises(ValueError):
        is_nef(DivClass(9, (3, 3, 3, 3, 3, 3, 3, 3, 2)))
    with pytest.raises(ValueError):
        is_nef(DivClass.uniform(3, 1, 4), "conic")


def test_nef_small_n():
    assert is_nef(DivClass(1, (1,))) and not is_nef(DivClass(1, (2,)))
    assert is_nef(DivClass(0, ())) and not is_nef(DivClass(-1, ()))


def test_effectivity_examples():
    assert is_effective_general(DivClass.uniform(48, 17, 8))
    assert is_effective_general(DivClass.uniform(12, 5, 6))
    assert not is_effective_general(DivClass(-1, (0, 0, 0)))
    cert = effectivity_certificate(DivClass.uniform(17, 6, 8))
    assert cert["effective"] and cert["reduced"] == [1, 0, 0, 0, 0, 0, 0, 0, 0]
    assert len(cert["steps"]) == 8


def test_class_of_examples():
    Z = FatPointScheme.uniform(make_config("conic", 5))
    assert class_of(Z, 2) == conic_class(5)
    F = class_of((2, 1, 1, 1, 1, 1), 3)
    assert F.square() == 0
    for m in range(1, 4):
        assert pair(conic_class(5), class_of((m,) * 5, 2 * m)) == 4 * m - 5 * m


def test_str_format():
    assert str(DivClass(17, (6, 6))) == "17L - 6E1 - 6E2"


@pytest.mark.parametrize("n,m", [(6, 1), (6, 2), (7, 1), (7, 2), (8, 1), (8, 2)])
def test_expected_h0_matches_generic_points(n, m):
    Z = FatPointScheme.uniform(make_config("generic", n, seed=7, check_m=m), m)
    for t in range(0, 3 * m + 2):
        assert Z.piece(t).dim == expected_h0(DivClass.uniform(t, m, n))


@pytest.mark.parametrize("n", [5, 6, 7])
@pytest.mark.parametrize("m", [1, 2])
def test_nef_implies_sections(n, m):
    Z = FatPointScheme.uniform(make_config("conic", n), m)
    for t in range(0, 2 * m + n + 2):
        if is_nef(class_of(Z, t), "conic"):
            assert Z.piece(t).dim > 0


def test_nef_threshold_general():
    assert nef_threshold((1,) * 6) == 3
    assert nef_threshold((2,) * 6) == 5


def test_chi_is_permutation_invariant():
    F = DivClass(7, (3, 2, 1, 1))
    assert all(chi(DivClass(7, p)) == chi(F) for p in permutations(F.m))
