import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resurgence.algebra import GF, QQ, rank_array
from resurgence.closedform import hilbert_conic
from resurgence.fatpoints import (
    FatPointScheme,
    conic_form,
    fat_ideal,
    genericity_battery,
    graded_piece,
    make_config,
    no_six_on_conic,
    no_three_collinear,
    strip_conic_factor,
    symbolic_power,
)
from resurgence.ideals import GradedPiece, Ideal
from resurgence.poly import plane_ring


def conic5(m=1, field=None):
    return FatPointScheme.uniform(make_config("conic", 5, field=field), m)


def test_conic_parametrization():
    cfg = make_config("conic", 5, field=QQ)
    assert [tuple(int(c) for c in p) for p in cfg.points] == [(1, 0, 0), (1, 1, 1), (1, 2, 4), (1, 3, 9), (1, 4, 16)]
    f = conic_form(cfg.ring)
    assert all(f.evaluate(p) == 0 for p in cfg.points)


def test_generic_config_is_in_general_position():
    cfg = make_config("generic", 6, seed=5)
    F = cfg.field
    assert no_three_collinear(F, cfg.points)
    rows = [[p[0] * p[0], p[0] * p[1], p[0] * p[2], p[1] * p[1], p[1] * p[2], p[2] * p[2]] for p in cfg.points]
    assert rank_array(np.array([[F.norm(v) for v in r] for r in rows], dtype=F.dtype), F) == 6
    assert no_six_on_conic(F, cfg.points)


def test_repeated_point_rejected():
    with pytest.raises(ValueError):
        make_config("explicit", points=[(1, 2, 3), (2, 4, 6)])
    with pytest.raises(ValueError):
        make_config("conic", params=[1, 1])


def test_battery_rejects_conic_points():
    cfg = make_config("conic", 6)
    assert not genericity_battery(cfg)


def test_battery_is_deterministic():
    a = make_config("generic", 7, seed=42, check_m=2)
    b = make_config("generic", 7, seed=42, check_m=2)
    assert a.points == b.points and a.attempts == b.attempts


def test_graded_piece_examples():
    f = conic_form(plane_ring(GF()))
    V = graded_piece(conic5(), 2)
    assert V.dim == 1 and V.contains(f)
    W = graded_piece(conic5(2), 4)
    assert W.dim == 1 and W.contains(f * f)
    assert graded_piece(conic5(), 3).dim == 5
    with pytest.raises(ValueError):
        graded_piece(conic5(), -1)


def test_zero_multiplicities_impose_nothing():
    cfg = make_config("conic", 5)
    Z = FatPointScheme(cfg, (1, 1, 0, 0, 0))
    line = FatPointScheme.uniform(make_config("explicit", points=cfg.points[:2]))
    assert all(Z.piece(t).dim == line.piece(t).dim for t in range(5))


def test_fat_ideal_examples():
    six = FatPointScheme.uniform(make_config("generic", 6, seed=1))
    I = fat_ideal(six)
    assert sorted(g.degree for g in I.generators) == [3, 3, 3, 3]
    Z = FatPointScheme(make_config("generic", 6, seed=4), (2, 1, 1, 1, 1, 1))
    assert sorted(g.degree for g in fat_ideal(Z).generators) == [3, 3, 4]
    one = FatPointScheme.uniform(make_config("explicit", points=[(0, 1, 5)]))
    assert sorted(g.degree for g in fat_ideal(one).generators) == [1, 1]


def test_fat_ideal_verified_saturated():
    fat_ideal(FatPointScheme(make_config("conic", 6, field=QQ), (2, 1, 1, 1, 0, 0)), verify_saturated=True)


def test_symbolic_power_examples():
    Z = conic5()
    assert symbolic_power(Z, 1) is fat_ideal(Z)
    six = FatPointScheme.uniform(make_config("generic", 6, seed=1, check_m=3))
    assert symbolic_power(six, 3).alpha() == 8
    nine = FatPointScheme.uniform(make_config("generic", 9, seed=1, check_m=2))
    assert symbolic_power(nine, 2).alpha() == 6


@pytest.mark.parametrize(
    "kind,n,m",
    [("conic", 5, 1), ("conic", 5, 2), ("conic", 6, 2), ("generic", 4, 2), ("generic", 6, 2)],
)
def test_intersection_route_matches_conditions(kind, n, m):
    cfg = make_config(kind, n, field=QQ, seed=3)
    Z = FatPointScheme.uniform(cfg)
    A = symbolic_power(Z, m, route="intersection")
    B = symbolic_power(Z, m)
    reg = Z.scaled(m).reg()
    assert all(A.graded_dim(t, "groebner") == B.graded_dim(t) for t in range(reg + 3))
    assert A == Ideal(B.generators, B.ring)


def test_strip_conic_factor_examples():
    e, red = strip_conic_factor(graded_piece(conic5(2), 4))
    assert (e, red.degree, red.dim) == (2, 0, 1)
    e, red = strip_conic_factor(graded_piece(conic5(), 3))
    assert (e, red.dim) == (0, 5)
    R = plane_ring(GF())
    x, y, z = R.gens()
    f = conic_form(R)
    e, red = strip_conic_factor(GradedPiece.from_polys(R, 3, [f * x, f * y]))
    assert e == 1 and red.degree == 1 and red.dim == 2
    with pytest.raises(ValueError):
        strip_conic_factor(GradedPiece(R, 3))


@pytest.mark.parametrize("n", [5, 6, 7, 9])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_conic_hilbert_matches_formula(n, m):
    Z = FatPointScheme.uniform(make_config("conic", n), m)
    for t in range(2 * m, 2 * m + 2 * n + 1):
        assert Z.piece(t).dim == hilbert_conic(n, m, t)


@pytest.mark.parametrize("n", [5, 6, 7])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_alpha_on_conic_is_2m(n, m):
    assert fat_ideal(FatPointScheme.uniform(make_config("conic", n), m)).alpha() == 2 * m


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=3, max_size=6).filter(any))
def test_degree_and_hilbert_limit(mults):
    Z = FatPointScheme(make_config("conic", len(mults)), tuple(mults))
    assert Z.hilbert(Z.reg()) == Z.degree == sum(v * (v + 1) // 2 for v in mults)


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 3), st.integers(0, 8))
def test_sub_multiplicity_containment(m, t):
    # vanishing to higher order is a stronger condition
    Z = FatPointScheme(make_config("conic", 5), (2, 1, 1, 1, 1))
    assert Z.scaled(m + 1).piece(t) <= Z.scaled(m).piece(t)
