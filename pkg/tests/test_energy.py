"""Energy extraction and the size-independence of the per-site value."""

from fractions import Fraction

import mpmath
import pytest

from qchain.cyclotomic import cyc_cos
from qchain.energy import (
    closed_form_root_sum,
    crosscheck_closed_forms,
    energy,
    extract_A,
    groundstate_summary,
    verify_linearity,
    verify_no_finite_size_correction,
)
from qchain.qoperator import ChainParams, build_q
from qchain.wtransform import w_sum

F = Fraction


def _sqrt5():
    return cyc_cos(1, 5) * 4 - 1


def test_energy_anchors_small_chains():
    # L = 3: energy is exactly -M for every N
    assert groundstate_summary(3, 1).energy == -3
    assert groundstate_summary(3, 2).energy == -5
    assert groundstate_summary(3, 4).energy == -9
    assert groundstate_summary(3, 2).energy_per_site == -1


def test_energy_anchor_golden_chain():
    total = groundstate_summary(5, 1).energy
    assert total * 2 == (_sqrt5() + 3) * -3
    per_site = groundstate_summary(5, 1).energy_per_site
    assert per_site * 2 == -(_sqrt5() + 3)


def test_root_sum_anchor_L3_affine():
    # E_1(3, N) = 1/2 + N/2 exactly
    for N in range(1, 7):
        assert groundstate_summary(3, N).E1 == F(1, 2) + F(N, 2)


def test_energy_is_real_or_falsified():
    ws = w_sum(build_q(ChainParams(7, 2)))
    summary = energy(ws)
    assert summary.energy.is_real()
    assert summary.energy_per_site * summary.params.M == summary.energy


def test_extract_A_small_cases():
    c3 = extract_A(3)
    assert c3.A == F(1, 2)
    assert c3.slope == F(1, 2)
    c5 = extract_A(5)
    assert c5.A * 2 == _sqrt5() + 1
    assert c5.slope == c5.A * 2 + cyc_cos(2, 5)


@pytest.mark.parametrize(
    "L, expected",
    [(7, "2.87046940558"), (9, "4.06417777248"), (11, "5.20626766416")],
)
def test_extract_A_numeric_values(L, expected):
    got = extract_A(L).A.embed(192).real
    with mpmath.workprec(192):
        assert abs(got - mpmath.mpf(expected)) < mpmath.mpf("1e-10")


def test_A_agrees_with_published_N0_limit():
    # extrapolating the closed-form root sum back to N = 0 must land on A
    with mpmath.workprec(256):
        for L in (7, 9, 11):
            a_exact = extract_A(L).A.embed(256).real
            a_closed = closed_form_root_sum(L, 0, 256)
            assert abs(a_exact - a_closed) < mpmath.mpf(2) ** -180


@pytest.mark.parametrize("L, N_max", [(3, 6), (5, 5), (7, 4), (9, 3)])
def test_linearity_of_root_sum(L, N_max):
    entries = verify_linearity(L, N_max)
    assert len(entries) == N_max
    for entry in entries:
        assert entry.passed, entry.line()
        assert entry.residual == "0"


@pytest.mark.parametrize("L, N_max", [(3, 6), (5, 5), (7, 4), (9, 3), (11, 2)])
def test_per_site_energy_is_size_independent(L, N_max):
    entries = verify_no_finite_size_correction(L, N_max)
    assert len(entries) == N_max
    for entry in entries:
        assert entry.passed, entry.line()


def test_per_site_density_values():
    # (L - 3) cos(2 pi / L) - 2 A, spot values
    assert verify_no_finite_size_correction(3, 2)[0].passed
    assert groundstate_summary(3, 5).energy_per_site == -1
    per_site5 = groundstate_summary(5, 3).energy_per_site
    assert per_site5 * 2 == -(_sqrt5() + 3)
    density7 = cyc_cos(2, 7) * 4 - extract_A(7).A * 2
    assert groundstate_summary(7, 3).energy_per_site == density7


def test_summary_cache_returns_identical_object():
    assert groundstate_summary(5, 2) is groundstate_summary(5, 2)


def test_first_differences_are_constant():
    for L in (3, 5, 7):
        values = [groundstate_summary(L, N).E1 for N in range(1, 5)]
        diffs = [values[i + 1] - values[i] for i in range(3)]
        assert diffs[0] == diffs[1] == diffs[2]


@pytest.mark.parametrize("L", [7, 9, 11])
def test_published_closed_forms_match(L):
    entries = crosscheck_closed_forms(L, precision_bits=256)
    assert entries, "no comparisons ran"
    for entry in entries:
        assert entry.passed, entry.line()


def test_closed_form_tolerance_is_strict():
    # the comparison must fail if the table is off by ~1e-50
    with mpmath.workprec(256):
        good = closed_form_root_sum(7, 1, 256)
        exact = groundstate_summary(7, 1).E1.embed(256).real
        assert abs(good - exact) < mpmath.mpf(2) ** -180
        assert abs((good + mpmath.mpf("1e-50")) - exact) > mpmath.mpf(2) ** -180


def test_pole_collision_is_fatal():
    # pushing e_1 of the one-root chain to +1 makes the cosine-weighted
    # denominator vanish, i.e. Q acquires a root at the Moebius pole
    q = build_q(ChainParams(3, 1)).with_coefficient_bump(1, 2)
    with pytest.raises(ZeroDivisionError):
        w_sum(q)
