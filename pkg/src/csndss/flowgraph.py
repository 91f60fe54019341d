"""Information flow graph construction and exact max-flow oracle.

This module is the independent check on the closed-form min-cut: it
builds the literal flow graph of a repair history (source, one in/out
vertex pair per storage node, data collector) and computes its min-cut
via max-flow with exact rational arithmetic.  Construction follows the
worst-case helper selection policy: a newcomer downloads from previously
created newcomers before touching untouched initial nodes, which is the
policy that minimizes the cut.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .mincut import check_distribution, count_orders, enumerate_distributions, enumerate_orders, order_matches
from .optimal import CapacityResult
from .params import RepairParams, SystemParams, require_valid


@dataclass
class FlowGraph:
    """Directed graph with rational edge capacities (None = unbounded)."""

    labels: list[str] = field(default_factory=list)
    edges: list[tuple[int, int, Fraction | None]] = field(default_factory=list)
    source: int = -1
    collector: int = -1
    newcomers: list[int] = field(default_factory=list)  # out-vertex ids

    def add_vertex(self, label: str) -> int:
        self.labels.append(label)
        return len(self.labels) - 1

    def add_edge(self, u: int, v: int, cap: Fraction | None) -> None:
        self.edges.append((u, v, cap))

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    def to_dot(self) -> str:
        """DOT text for debugging; unbounded edges render as "inf"."""
        lines = ["digraph ifg {", "  rankdir=LR;"]
        for i, label in enumerate(self.labels):
            lines.append(f'  v{i} [label="{label}"];')
        for u, v, cap in self.edges:
            text = "inf" if cap is None else str(cap)
            lines.append(f'  v{u} -> v{v} [label="{text}"];')
        lines.append("}")
        return "\n".join(lines)


def build_ifg(
    sys: SystemParams,
    rep: RepairParams,
    s: Sequence[int],
    pi: Sequence[int],
    separate_positions: Iterable[int] | None = None,
    prefer_newcomers: bool = True,
    fail_highest: bool = False,
) -> FlowGraph:
    """Flow graph for the repair history given by (s, pi).

    Starts from n initial nodes, applies the k failures in the order of
    pi (the lowest-index never-failed original node of the designated
    cluster or separate pool fails each time; fail_highest flips that
    choice for index-invariance tests), wires each newcomer to its
    helpers, and connects the collector to the k newcomers' outputs.
    With prefer_newcomers=False helpers are drawn from initial nodes
    first, demonstrating that non-worst-case graphs have larger cuts.
    """
    require_valid(sys, rep)
    check_distribution(sys, s)
    if not order_matches(s, pi):
        raise ValueError(f"pi = {tuple(pi)} is not a cluster order for s = {tuple(s)}")
    zero_positions = {i for i, symbol in enumerate(pi, start=1) if symbol == 0}
    if separate_positions is not None and set(separate_positions) != zero_positions:
        raise ValueError(
            f"separate_positions {sorted(separate_positions)} disagree with pi "
            f"(zeros at {sorted(zero_positions)})"
        )

    # Physical layout: cluster c occupies ids (c-1)*R+1 .. c*R, separate
    # nodes follow.  Cluster 0 marks the separate pool.
    cluster_of = {}
    for node in range(1, sys.n + 1):
        cluster_of[node] = (node - 1) // sys.R + 1 if node <= sys.L * sys.R else 0

    g = FlowGraph()
    g.source = g.add_vertex("src")
    in_v: dict[int, int] = {}
    out_v: dict[int, int] = {}
    for node in range(1, sys.n + 1):
        in_v[node] = g.add_vertex(f"in{node}")
        out_v[node] = g.add_vertex(f"out{node}")
        g.add_edge(g.source, in_v[node], None)
        g.add_edge(in_v[node], out_v[node], rep.alpha)

    alive_original = list(range(1, sys.n + 1))
    alive_newcomers: list[int] = []  # physical ids n+1, n+2, ...
    collector_targets: list[int] = []

    for step, symbol in enumerate(pi, start=1):
        pool = [x for x in alive_original if cluster_of[x] == symbol]
        if not pool:
            raise ValueError(
                f"step {step}: no never-failed original node left in "
                f"{'separate pool' if symbol == 0 else f'cluster {symbol}'}"
            )
        failed = max(pool) if fail_highest else min(pool)
        alive_original.remove(failed)

        newcomer = sys.n + step
        cluster_of[newcomer] = symbol
        in_v[newcomer] = g.add_vertex(f"in{newcomer}")
        out_v[newcomer] = g.add_vertex(f"out{newcomer}")
        g.add_edge(in_v[newcomer], out_v[newcomer], rep.alpha)

        alive = alive_original + alive_newcomers
        if symbol == 0:
            # Separate newcomer: beta_S from any d alive nodes.
            candidates = alive
            helper_count, beta = rep.d, rep.beta_S
        else:
            intra = [x for x in alive if cluster_of[x] == symbol]
            for helper in intra:  # all R-1 intra-cluster alive nodes
                g.add_edge(out_v[helper], in_v[newcomer], rep.beta_I)
            candidates = [x for x in alive if cluster_of[x] != symbol]
            helper_count, beta = rep.d_C, rep.beta_C
        newcomer_pool = sorted(x for x in candidates if x > sys.n)
        initial_pool = sorted(x for x in candidates if x <= sys.n)
        ordered = (
            newcomer_pool + initial_pool if prefer_newcomers else initial_pool + newcomer_pool
        )
        if len(ordered) < helper_count:
            raise ValueError(
                f"step {step}: need {helper_count} helpers but only {len(ordered)} alive"
            )
        for helper in ordered[:helper_count]:
            g.add_edge(out_v[helper], in_v[newcomer], beta)

        alive_newcomers.append(newcomer)
        collector_targets.append(out_v[newcomer])

    g.collector = g.add_vertex("dc")
    for vertex in collector_targets:
        g.add_edge(vertex, g.collector, None)
    g.newcomers = collector_targets
    return g


def max_flow(g: FlowGraph) -> Fraction:
    """Exact source-to-collector max flow.

    Unbounded edges are replaced by a finite bound exceeding any possible
    flow; capacities are rescaled to integers so augmentation runs on
    Python ints and the result stays exact.
    """
    finite = [cap for _, _, cap in g.edges if cap is not None]
    bound = sum(finite, start=Fraction(0)) + 1
    scale = math.lcm(*(cap.denominator for cap in finite), bound.denominator)

    n = g.vertex_count
    adj: list[list[int]] = [[] for _ in range(n)]
    to: list[int] = []
    cap: list[int] = []

    def arc(u: int, v: int, c: int) -> None:
        adj[u].append(len(to))
        to.append(v)
        cap.append(c)
        adj[v].append(len(to))
        to.append(u)
        cap.append(0)

    for u, v, c in g.edges:
        arc(u, v, int((bound if c is None else c) * scale))

    total = 0
    while True:
        parent_arc = [-1] * n
        parent_arc[g.source] = -2
        queue = deque([g.source])
        while queue and parent_arc[g.collector] == -1:
            u = queue.popleft()
            for e in adj[u]:
                v = to[e]
                if parent_arc[v] == -1 and cap[e] > 0:
                    parent_arc[v] = e
                    queue.append(v)
        if parent_arc[g.collector] == -1:
            break
        push = None
        v = g.collector
        while v != g.source:
            e = parent_arc[v]
            push = cap[e] if push is None else min(push, cap[e])
            v = to[e ^ 1]
        v = g.collector
        while v != g.source:
            e = parent_arc[v]
            cap[e] -= push
            cap[e ^ 1] += push
            v = to[e ^ 1]
        total += push
    return Fraction(total, scale)


class BudgetExceededError(RuntimeError):
    """Enumeration size exceeds the configured brute-force budget."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"brute force needs {required} graph evaluations, budget is {budget}"
        )


def brute_force_capacity(
    sys: SystemParams,
    rep: RepairParams,
    s0_range: Iterable[int] | None = None,
    max_cases: int = 200_000,
) -> CapacityResult:
    """Exhaustive capacity: min of max_flow over every (s, pi).

    Searches all selected node distributions with s_0 in s0_range
    (default 0..S) and every cluster order of each.  Refuses up front if
    the enumeration exceeds max_cases.
    """
    require_valid(sys, rep)
    s0_values = list(s0_range) if s0_range is not None else list(range(sys.S + 1))
    pools: list[tuple[int, ...]] = []
    for s0 in s0_values:
        if not 0 <= s0 <= sys.S:
            raise ValueError(f"s0 = {s0} out of range 0..S = {sys.S}")
        if 0 <= sys.k - s0 <= sys.L * sys.R:
            pools.extend(enumerate_distributions(sys, s0))
    if not pools:
        raise ValueError(f"no selected node distribution with s_0 in {s0_values}")
    required = sum(count_orders(s) for s in pools)
    if required > max_cases:
        raise BudgetExceededError(required, max_cases)

    best_value: Fraction | None = None
    best_s: tuple[int, ...] = ()
    best_pi: tuple[int, ...] = ()
    for s in pools:
        for pi in enumerate_orders(s):
            value = max_flow(build_ifg(sys, rep, s, pi))
            if best_value is None or value < best_value:
                best_value, best_s, best_pi = value, s, pi
    assert best_value is not None
    position = best_pi.index(0) + 1 if best_s[0] == 1 else None
    return CapacityResult(
        capacity=best_value, s=best_s, pi=best_pi, separate_position=position
    )
