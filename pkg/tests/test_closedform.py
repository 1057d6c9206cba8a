from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from resurgence import closedform as cf
from resurgence.closedform import (
    Unsupported,
    ZeroPiece,
    alpha_reg_rule,
    alpha_symbolic,
    approach_sequence,
    contains,
    contains_conic,
    contains_general,
    gamma_value,
    hilbert_conic,
    q_power,
    q_power_closed,
    q_single,
    resurgence,
    rho_bounds,
    sufficiency_bounds,
)

SUPPORTED = [("general", n) for n in range(1, 10)] + [("conic", n) for n in range(1, 12)]


def test_q_single_examples():
    assert q_single(5, 2, 4) == 2
    assert q_single(5, 1, 3) == 0
    assert q_single(7, 1, 3) == 1
    with pytest.raises(ZeroPiece):
        q_single(5, 2, 3)
    with pytest.raises(Unsupported):
        q_single(4, 1, 3)


def test_q_power_examples():
    assert q_power(5, 2, 5) == 1
    assert q_power(7, 2, 8) == 0
    with pytest.raises(ZeroPiece):
        q_power(5, 2, 3)


@pytest.mark.parametrize("n", [5, 7, 9, 11])
@pytest.mark.parametrize("r", range(1, 7))
def test_q_power_closed_form(n, r):
    for t in range(2 * r, r * (n + 3) + 1):
        assert q_power(n, r, t) == q_power_closed(n, r, t)


@pytest.mark.parametrize("n", [6, 8, 10])
def test_q_power_even_vanishes_from_half_n(n):
    r = 3
    t = r * (n // 2)
    assert q_power(n, r, t) == 0


def test_contains_conic_examples():
    assert contains_conic(4, 3, 2).contains
    v = contains_conic(5, 2, 2)
    assert not v.contains and (v.certificate["lhs"], v.certificate["rhs"]) == (11, 10)
    assert contains_conic(5, 5, 4).contains
    assert contains_conic(4, 3, 2).method == "conic-even-or-single"
    assert v.method == "conic-odd"


def test_contains_general_examples():
    assert not contains_general(9, 2, 2).contains
    assert contains_general(7, 8, 7).contains
    assert contains_general(8, 1, 1).contains
    assert not contains_general(7, 2, 2).contains
    v = contains_general(5, 2, 2)
    assert v.method == "general-via-conic" and v.certificate["delegated_to"] == "conic-odd"
    with pytest.raises(Unsupported):
        contains_general(10, 3, 2)


def test_alpha_symbolic_examples():
    assert alpha_symbolic("general", 6, 3) == 8
    assert alpha_symbolic("general", 8, 2) == 6
    assert alpha_symbolic("general", 2, 3) == 3
    assert alpha_symbolic("conic", 7, 3, s=2) == 12
    expected = {1: 4, 2: 4, 3: 6, 4: 8, 5: 8, 6: 10, 7: 11, 8: 12, 9: 12}
    assert {n: alpha_symbolic("general", n, 4) for n in range(1, 10)} == expected


def test_gamma_and_resurgence_examples():
    assert gamma_value("general", 6) == Fraction(12, 5)
    assert gamma_value("general", 9) == 3
    assert gamma_value("general", 1) == 1
    assert resurgence("conic", 7) == Fraction(8, 7)
    assert resurgence("general", 8) == Fraction(17, 12)
    assert all(resurgence("conic", n) == 1 for n in (2, 4, 6, 8))
    assert resurgence("general", 5) == resurgence("conic", 5)


def test_rho_bounds_examples():
    assert rho_bounds(3, Fraction(12, 5), 3) == (Fraction(5, 4), Fraction(5, 4))
    assert rho_bounds(3, Fraction(48, 17), 4) == (Fraction(17, 16), Fraction(17, 12))
    with pytest.raises(ValueError):
        rho_bounds(1, 0, 1)


def test_alpha_reg_rule_examples():
    v = alpha_reg_rule(3, 3, 8, 2)
    assert v.contains and v.method == "alpha-reg"
    v = alpha_reg_rule(3, 4, 3, 2)
    assert v.contains is False and v.method == "bound-only"
    assert alpha_reg_rule(3, 4, 7, 2).contains is None


def test_hilbert_conic_examples():
    assert hilbert_conic(5, 2, 4) == 1
    assert hilbert_conic(5, 1, 3) == 5
    assert hilbert_conic(5, 1, 2) == 1
    assert hilbert_conic(6, 2, 3) == 0


def test_sufficiency_examples():
    assert sufficiency_bounds(4, 2) == {"els_hoh": True, "conjecture_1_1": True, "conjecture_1_1_status": "conjecture"}
    b = sufficiency_bounds(3, 2)
    assert not b["els_hoh"] and b["conjecture_1_1"]
    b = sufficiency_bounds(1, 1)
    assert b["els_hoh"] and b["conjecture_1_1"]


def test_value_source_tags_derived_entries():
    assert cf.value_source("general", 4) == "derived"
    assert cf.value_source("general", 6) == "closed-form"


def test_alpha_reg_values():
    assert cf.alpha_reg_values("general", 6) == (3, 3)
    assert cf.alpha_reg_values("general", 8) == (3, 4)
    assert cf.alpha_reg_values("conic", 5) == (2, 3)


@pytest.mark.parametrize("kind,n", SUPPORTED)
def test_containment_implies_m_at_least_r(kind, n):
    for m in range(1, 25):
        for r in range(1, 25):
            if contains(kind, n, m, r).contains:
                assert m >= r


@pytest.mark.parametrize("kind,n", SUPPORTED)
def test_containment_monotone_in_m(kind, n):
    for r in range(1, 25):
        for m in range(1, 40):
            if contains(kind, n, m, r).contains:
                assert contains(kind, n, m + 1, r).contains


@pytest.mark.parametrize("kind,n", SUPPORTED)
def test_resurgence_is_supremum(kind, n):
    rho = resurgence(kind, n)
    for m in range(1, 60):
        for r in range(1, 60):
            if Fraction(m, r) > rho:
                assert contains(kind, n, m, r).contains
    seq = approach_sequence(kind, n, 30)
    ratios = [Fraction(m, r) for m, r in seq]
    assert all(x < rho for x in ratios) and ratios == sorted(ratios)
    assert rho - ratios[-1] <= Fraction(1, 30)
    assert not any(contains(kind, n, m, r).contains for m, r in seq)


@pytest.mark.parametrize("n", range(5, 12))
def test_degreewise_q_comparison_matches_criterion(n):
    # containment holds iff the conic-exponent comparison holds in every degree
    for r in range(1, 6):
        for m in range(r, 2 * r + 3):
            degreewise = all(cf.graded_containment_conic(n, 1, m, r, t) for t in range(2 * m, 2 * m + 4 * n * r))
            assert degreewise == contains_conic(n, m, r).contains


@given(st.integers(5, 11), st.integers(1, 4), st.integers(0, 30))
def test_q_single_minimality(n, m, extra):
    t = 2 * m + extra
    s = q_single(n, m, t)
    assert 2 * (t - 2 * s) >= (m - s) * n
    assert s == 0 or 2 * (t - 2 * (s - 1)) < (m - s + 1) * n
