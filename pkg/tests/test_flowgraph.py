from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from csndss import (
    BudgetExceededError,
    RepairParams,
    SystemParams,
    brute_force_capacity,
    build_ifg,
    capacity,
    cut_profile,
    enumerate_distributions,
    enumerate_orders,
    max_flow,
    validate,
)

from conftest import small_systems, unclipped_alpha


def test_vertex_count(fig5_system, fig5_repair):
    g = build_ifg(fig5_system, fig5_repair, (0, 4, 4, 0), (1, 2, 1, 2, 1, 2, 1, 2))
    assert g.vertex_count == 2 * (fig5_system.n + fig5_system.k) + 2


def test_newcomer_in_degree_matches_helper_counts():
    # One cluster of three plus three separate nodes; a cluster repair
    # downloads from 2 intra and 3 cross helpers, so in-degree 5.
    sysp = SystemParams(n=6, k=4, L=1, R=3, S=3)
    rep = RepairParams(alpha=2, d_I=2, beta_I=2, d_C=3, beta_C=1, beta_S=1)
    assert validate(sysp, rep).ok
    g = build_ifg(sysp, rep, (1, 3), (1, 1, 0, 1))
    first_newcomer_in = [e for e in g.edges if e[1] == g.labels.index("in7")]
    assert len(first_newcomer_in) == 5


def test_internal_edges_carry_alpha(fig6_system, fig6_repair):
    g = build_ifg(fig6_system, fig6_repair, (0, 3, 1), (1, 2, 1, 1))
    internal = [
        (u, v, c)
        for u, v, c in g.edges
        if g.labels[u].startswith("in") and g.labels[v].startswith("out")
    ]
    assert len(internal) == fig6_system.n + fig6_system.k
    assert all(c == fig6_repair.alpha for _, _, c in internal)


def test_source_and_collector_edges_are_unbounded(fig6_system, fig6_repair):
    g = build_ifg(fig6_system, fig6_repair, (0, 3, 1), (1, 2, 1, 1))
    assert all(c is None for u, v, c in g.edges if u == g.source)
    assert all(c is None for u, v, c in g.edges if v == g.collector)
    assert len([1 for u, _, _ in g.edges if u == g.source]) == fig6_system.n
    assert len([1 for _, v, _ in g.edges if v == g.collector]) == fig6_system.k


def test_flow_matches_closed_form_fig5(fig5_system, fig5_repair):
    g = build_ifg(fig5_system, fig5_repair, (0, 4, 4, 0), (1, 2, 1, 2, 1, 2, 1, 2))
    assert max_flow(g) == 32


def test_flow_matches_closed_form_fig6(fig6_system, fig6_repair):
    g = build_ifg(fig6_system, fig6_repair, (0, 3, 1), (1, 2, 1, 1))
    assert max_flow(g) == 8


def test_flow_saturates_at_k_alpha(fig6_system):
    rep = RepairParams(alpha=Fraction(1, 7), d_I=2, beta_I=100, d_C=3, beta_C=100)
    g = build_ifg(fig6_system, rep, (0, 3, 1), (1, 2, 1, 1))
    assert max_flow(g) == fig6_system.k * rep.alpha


def test_separate_positions_argument_is_checked(fig6_system, fig6_repair):
    with pytest.raises(ValueError):
        build_ifg(fig6_system, fig6_repair, (0, 3, 1), (1, 2, 1, 1), separate_positions={2})
    sysp = SystemParams(n=6, k=2, L=1, R=3, S=3)
    rep = RepairParams(alpha=1, d_I=2, beta_I=1, d_C=1, beta_C=1, beta_S=1)
    g = build_ifg(sysp, rep, (1, 1), (1, 0), separate_positions={2})
    assert max_flow(g) == cut_profile(sysp, rep, (1, 1), (1, 0)).mc


def test_flow_invariant_under_failure_index_choice():
    """Which original fails within the designated pool is cosmetic: the
    min-cut is unchanged whenever it equals the closed form (clipping-free
    alpha for arbitrary betas; any alpha for the homogeneous model)."""
    for sysp in small_systems(max_n=7, max_k=4):
        probe = RepairParams(
            alpha=0, d_I=sysp.R - 1, beta_I=2,
            d_C=max(sysp.k - sysp.R + 1, 0), beta_C=1, beta_S=2,
        )
        if not validate(sysp, probe).ok:
            continue
        for s0 in range(0, min(sysp.S, 1) + 1):
            if not 0 <= sysp.k - s0 <= sysp.L * sysp.R:
                continue
            for s in enumerate_distributions(sysp, s0)[:2]:
                pi = next(iter(enumerate_orders(s)))
                w = cut_profile(sysp, probe, s, pi).w
                rep = RepairParams(
                    alpha=unclipped_alpha(w), d_I=sysp.R - 1, beta_I=2,
                    d_C=probe.d_C, beta_C=1, beta_S=2,
                )
                low = max_flow(build_ifg(sysp, rep, s, pi))
                high = max_flow(build_ifg(sysp, rep, s, pi, fail_highest=True))
                assert low == high == sum(w)
        # homogeneous betas: invariance holds at clipping alphas too
        homog = RepairParams(
            alpha=Fraction(5, 2), d_I=sysp.R - 1, beta_I=1,
            d_C=sysp.n - sysp.R, beta_C=1, beta_S=1,
        )
        if not validate(sysp, homog).ok or sysp.k > sysp.L * sysp.R:
            continue
        s = enumerate_distributions(sysp, 0)[0]
        pi = next(iter(enumerate_orders(s)))
        assert max_flow(build_ifg(sysp, homog, s, pi)) == max_flow(
            build_ifg(sysp, homog, s, pi, fail_highest=True)
        )


def test_preferring_initial_nodes_never_shrinks_the_cut():
    for sysp in small_systems(max_n=7, max_k=4):
        rep = RepairParams(
            alpha=2, d_I=sysp.R - 1, beta_I=2,
            d_C=max(sysp.k - sysp.R + 1, 0), beta_C=1, beta_S=1,
        )
        if not validate(sysp, rep).ok or sysp.k > sysp.L * sysp.R:
            continue
        for s in enumerate_distributions(sysp, 0)[:2]:
            pi = next(iter(enumerate_orders(s)))
            worst = max_flow(build_ifg(sysp, rep, s, pi))
            mild = max_flow(build_ifg(sysp, rep, s, pi, prefer_newcomers=False))
            assert mild >= worst


def test_oracle_equality_in_clipping_free_regime():
    """With alpha above every part weight the graph min-cut equals the
    closed form exactly, for every (s, pi) of a systems sweep."""
    cases = 0
    for sysp in small_systems(max_n=7, max_k=4):
        for d_C in {max(sysp.k - sysp.R + 1, 0), sysp.n - sysp.R}:
            for beta_I, beta_C, beta_S in [(2, 1, 3), (3, 3, 1), (1, 0, 2)]:
                probe = RepairParams(
                    alpha=0, d_I=sysp.R - 1, beta_I=beta_I,
                    d_C=d_C, beta_C=beta_C, beta_S=beta_S,
                )
                if not validate(sysp, probe).ok:
                    continue
                for s0 in range(0, sysp.S + 1):
                    if not 0 <= sysp.k - s0 <= sysp.L * sysp.R:
                        continue
                    for s in enumerate_distributions(sysp, s0):
                        for pi in enumerate_orders(s):
                            w = cut_profile(sysp, probe, s, pi).w
                            rep = RepairParams(
                                alpha=unclipped_alpha(w), d_I=sysp.R - 1,
                                beta_I=beta_I, d_C=d_C, beta_C=beta_C, beta_S=beta_S,
                            )
                            mc = cut_profile(sysp, rep, s, pi).mc
                            assert mc == max_flow(build_ifg(sysp, rep, s, pi))
                            cases += 1
    assert cases >= 2000


@given(
    index=st.integers(0, 10 ** 6),
    beta_I=st.integers(0, 3),
    beta_C=st.integers(0, 3),
    beta_S=st.integers(0, 3),
    alpha=st.fractions(min_value=0, max_value=10),
)
@settings(max_examples=120, deadline=None)
def test_part_cut_value_is_an_upper_bound(index, beta_I, beta_C, beta_S, alpha):
    """At any alpha the closed form never undershoots the graph min-cut.

    (Equality can fail at extreme beta combinations: cutting a shared
    initial helper's internal edge may be cheaper than its outgoing
    edges, which the per-position part-cut accounting cannot see.)
    """
    if beta_I < beta_C:
        beta_I, beta_C = beta_C, beta_I
    systems = [s for s in small_systems(max_n=7, max_k=4)]
    sysp = systems[index % len(systems)]
    d_C = max(sysp.k - sysp.R + 1, 0) + index % 2
    rep = RepairParams(
        alpha=alpha, d_I=sysp.R - 1, beta_I=beta_I, d_C=d_C,
        beta_C=beta_C, beta_S=beta_S,
    )
    if not validate(sysp, rep).ok:
        return
    s0_choices = [s0 for s0 in range(sysp.S + 1) if 0 <= sysp.k - s0 <= sysp.L * sysp.R]
    s_pool = enumerate_distributions(sysp, s0_choices[index % len(s0_choices)])
    s = s_pool[index % len(s_pool)]
    orders = list(enumerate_orders(s))
    pi = orders[index % len(orders)]
    assert cut_profile(sysp, rep, s, pi).mc >= max_flow(build_ifg(sysp, rep, s, pi))


def test_known_upper_bound_gap_example():
    """Pinned demonstration that the part-cut value can exceed the true
    min-cut: one cluster of three plus three separate nodes, beta_C = 0,
    beta_S = 1.  The never-failing cluster original feeds both cluster
    newcomers and the separate newcomer's helper set; cutting its alpha
    edge once is cheaper than the formula's per-position accounting."""
    sysp = SystemParams(n=6, k=3, L=1, R=3, S=3)
    rep = RepairParams(alpha=Fraction(5, 2), d_I=2, beta_I=2, d_C=3, beta_C=0, beta_S=1)
    assert validate(sysp, rep).ok
    s, pi = (1, 2), (1, 1, 0)
    assert cut_profile(sysp, rep, s, pi).mc == 7
    assert max_flow(build_ifg(sysp, rep, s, pi)) == Fraction(13, 2)


def test_brute_force_hand_case():
    """k=2, L=2, R=2: the two distributions and all orders by hand."""
    sysp = SystemParams(n=4, k=2, L=2, R=2, S=0)
    rep = RepairParams(alpha=10, d_I=1, beta_I=2, d_C=2, beta_C=1)
    assert enumerate_distributions(sysp, 0) == [(0, 2, 0), (0, 1, 1)]
    # (0,2,0), pi=(1,1): w = (1*2 + 2*1, 0*2 + 2*1) = (4, 2) -> 6
    # (0,1,1), either order: w = (4, 1*2 + 1*1) = (4, 3) -> 7
    result = brute_force_capacity(sysp, rep)
    assert result.capacity == 6
    assert result.s == (0, 2, 0)
    assert capacity(sysp, rep).capacity == 6


def test_brute_force_fig6(fig6_system, fig6_repair):
    result = brute_force_capacity(fig6_system, fig6_repair)
    assert result.capacity == 8
    assert max_flow(build_ifg(fig6_system, fig6_repair, result.s, result.pi)) == 8


def test_brute_force_budget_guard(fig5_system, fig5_repair):
    with pytest.raises(BudgetExceededError):
        brute_force_capacity(fig5_system, fig5_repair, max_cases=100)


def test_brute_force_reports_separate_witness():
    sysp = SystemParams(n=6, k=2, L=1, R=3, S=3)
    rep = RepairParams(alpha=10, d_I=2, beta_I=3, d_C=1, beta_C=1, beta_S="1/4")
    result = brute_force_capacity(sysp, rep, s0_range={0, 1})
    assert result.s == (1, 1)  # tiny beta_S favors a separate selected node
    assert result.capacity == Fraction(27, 4)
    assert result.separate_position == result.pi.index(0) + 1


def test_dot_export(fig6_system, fig6_repair):
    g = build_ifg(fig6_system, fig6_repair, (0, 3, 1), (1, 2, 1, 1))
    dot = g.to_dot()
    assert dot.startswith("digraph")
    assert '"src"' in dot and '"dc"' in dot and "inf" in dot
    assert dot.count("->") == len(g.edges)


def test_cross_edges_from_earlier_newcomers_fig5(fig5_system, fig5_repair):
    """In the alternating order the i-th newcomer draws min(i - h(i), d_C)
    cross edges from earlier newcomers, the rest from initial nodes."""
    s, pi = (0, 4, 4, 0), (1, 2, 1, 2, 1, 2, 1, 2)
    g = build_ifg(fig5_system, fig5_repair, s, pi)
    h = [1, 1, 2, 2, 3, 3, 4, 4]
    n = fig5_system.n
    for i in range(1, fig5_system.k + 1):
        target = g.labels.index(f"in{n + i}")
        cross_newcomer_edges = [
            1
            for u, v, cap in g.edges
            if v == target
            and cap == fig5_repair.beta_C
            and int(g.labels[u].removeprefix("out")) > n
        ]
        assert len(cross_newcomer_edges) == min(i - h[i - 1], fig5_repair.d_C)


def test_brute_force_fig5(fig5_system, fig5_repair):
    result = brute_force_capacity(fig5_system, fig5_repair, max_cases=2000)
    assert result.capacity == 32
    assert result.s == (0, 4, 4, 0)


def test_capacity_matches_oracle_on_one_cluster_three_separate():
    """One cluster of three plus three separate nodes with
    beta_S >= beta_I >= beta_C: the closed form equals the exhaustive
    minimum over s0 in {0, 1}."""
    sysp = SystemParams(n=6, k=4, L=1, R=3, S=3)
    rep = RepairParams(alpha=2, d_I=2, beta_I=2, d_C=3, beta_C=1, beta_S=3)
    assert validate(sysp, rep).ok
    closed = capacity(sysp, rep)
    brute = brute_force_capacity(sysp, rep, s0_range={0, 1})
    assert closed.capacity == brute.capacity
