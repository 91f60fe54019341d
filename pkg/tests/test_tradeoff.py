from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from csndss import (
    InfeasibleError,
    RepairParams,
    SystemParams,
    capacity,
    min_alpha,
    min_betaC,
    tradeoff_curve,
)


def rep5(beta_C, alpha=0):
    return RepairParams(alpha=alpha, d_I=3, beta_I=2 * beta_C, d_C=8, beta_C=beta_C)


def rep6(beta_C, alpha=0):
    return RepairParams(alpha=alpha, d_I=2, beta_I=2 * beta_C, d_C=3, beta_C=beta_C)


def test_min_alpha_fig5(fig5_system):
    assert min_alpha(fig5_system, rep5(2), 32) == 4


def test_min_alpha_fig6(fig6_system):
    assert min_alpha(fig6_system, rep6(1), 8) == 2


def test_min_alpha_floor_at_M_over_k(fig5_system):
    assert min_alpha(fig5_system, rep5(10 ** 6), 32) == Fraction(32, 8)


def test_min_alpha_infeasible_reports_deficit(fig5_system):
    with pytest.raises(InfeasibleError) as err:
        min_alpha(fig5_system, rep5(Fraction(1, 100)), 32)
    assert err.value.deficit > 0


def test_min_betaC_fig6(fig6_system):
    rep = RepairParams(alpha=2, d_I=2, beta_I=0, d_C=3, beta_C=0)
    assert min_betaC(fig6_system, rep, 8, ratio=2) == 1


def test_min_betaC_zero_file(fig6_system):
    rep = RepairParams(alpha=2, d_I=2, beta_I=0, d_C=3, beta_C=0)
    assert min_betaC(fig6_system, rep, 0, ratio=2) == 0


def test_min_betaC_infeasible_when_k_alpha_below_M(fig6_system):
    rep = RepairParams(alpha=1, d_I=2, beta_I=0, d_C=3, beta_C=0)
    with pytest.raises(InfeasibleError):
        min_betaC(fig6_system, rep, 8, ratio=2)


def test_min_betaC_rejects_ratio_below_one(fig6_system):
    rep = RepairParams(alpha=2, d_I=2, beta_I=0, d_C=3, beta_C=0)
    with pytest.raises(ValueError):
        min_betaC(fig6_system, rep, 8, ratio="1/2")


def test_min_alpha_round_trip(fig5_system):
    """Capacity at the solved alpha meets M; any smaller alpha misses it."""
    for beta_C in (1, Fraction(3, 2), 2, 3):
        rep = rep5(beta_C)
        alpha = min_alpha(fig5_system, rep, 32)
        assert capacity(fig5_system, replace(rep, alpha=alpha)).capacity >= 32
        for delta in (Fraction(1, 7), Fraction(1, 1000)):
            short = capacity(fig5_system, replace(rep, alpha=alpha - delta)).capacity
            assert short < 32


def test_min_betaC_round_trip(fig6_system):
    for alpha in (2, Fraction(5, 2), 3):
        rep = RepairParams(alpha=alpha, d_I=2, beta_I=0, d_C=3, beta_C=0)
        beta_C = min_betaC(fig6_system, rep, 8, ratio=2)
        achieved = capacity(
            fig6_system, replace(rep, beta_I=2 * beta_C, beta_C=beta_C)
        ).capacity
        assert achieved >= 8
        if beta_C > 0:
            shrunk = beta_C - Fraction(1, 97)
            short = capacity(
                fig6_system, replace(rep, beta_I=2 * shrunk, beta_C=shrunk)
            ).capacity
            assert short < 8


def test_min_alpha_with_separate_nodes_covers_all_positions():
    """With S >= 1 the solved alpha must satisfy every one-separate
    profile as well as the cluster-only profile."""
    sysp = SystemParams(n=14, k=8, L=3, R=4, S=2)
    rep = RepairParams(alpha=0, d_I=3, beta_I=4, d_C=8, beta_C=2, beta_S=Fraction(1, 2))
    alpha = min_alpha(sysp, rep, 32)
    assert capacity(sysp, replace(rep, alpha=alpha)).capacity >= 32
    short = capacity(sysp, replace(rep, alpha=alpha - Fraction(1, 50))).capacity
    assert short < 32


@given(step=st.integers(4, 40))
@settings(max_examples=40, deadline=None)
def test_min_alpha_monotone_in_betaC(step):
    # step >= 4 keeps both sweep points feasible (total weight >= M)
    sysp = SystemParams(n=12, k=8, L=3, R=4, S=0)
    beta = Fraction(step, 8)
    wider = beta + Fraction(1, 8)
    assert min_alpha(sysp, rep5(wider), 32) <= min_alpha(sysp, rep5(beta), 32)


def test_min_alpha_monotone_in_dC(fig5_system):
    for beta_C in (Fraction(3, 4), 1, 2):
        alphas = []
        for d_C in (8, 7, 6):
            rep = RepairParams(alpha=0, d_I=3, beta_I=2 * beta_C, d_C=d_C, beta_C=beta_C)
            alphas.append(min_alpha(fig5_system, rep, 32))
        assert alphas[0] <= alphas[1] <= alphas[2]


def test_tradeoff_curve_fig6_contains_msr_point(fig6_system):
    points = tradeoff_curve(fig6_system, 2, 3, 8, [Fraction(t, 4) for t in range(2, 26)])
    by_beta = {p.beta_C: p for p in points}
    msr = by_beta[Fraction(1)]
    assert msr.alpha == 2
    assert msr.capacity == 8
    assert msr.beta_I == 2
    assert msr.gamma == 2 * 2 + 3 * 1


def test_tradeoff_curve_fig5_contains_msr_point(fig5_system):
    points = tradeoff_curve(fig5_system, 2, 8, 32, [2])
    assert points[0].alpha == 4 and points[0].capacity == 32


def test_tradeoff_curve_marks_infeasible_points(fig5_system):
    points = tradeoff_curve(fig5_system, 2, 8, 32, [Fraction(1, 100), 2])
    assert not points[0].feasible and points[0].alpha is None
    assert points[1].feasible


def test_min_betaC_fig5_at_minimum_storage(fig5_system):
    """At alpha = M/k the smallest part weight is 4*beta_C, so capacity
    reaches 32 already at beta_C = 1 (the plotted curve's left end sits
    at beta_C = 2, but that point is not the smallest feasible beta_C)."""
    rep = RepairParams(alpha=4, d_I=3, beta_I=0, d_C=8, beta_C=0)
    assert min_betaC(fig5_system, rep, 32, ratio=2) == 1
