"""Capacity-achieving repair configurations and system capacity.

The worst-case repair sequence of a clustered system is produced by two
greedy algorithms: horizontal selection packs the k selected nodes into
as few clusters as possible (s_1 = R, s_2 = R, ... plus a remainder),
and the vertical order visits the occupied clusters round-robin.  For
distributions without separate nodes this pair provably minimizes the
min-cut over all repair sequences; with exactly one separate selected
node the same construction minimizes once its position is fixed, so the
capacity search tries every position.  Distributions with two or more
separate selected nodes have no proven closed form and are only covered
by the brute-force oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .mincut import cut_profile
from .params import RepairParams, SystemParams, require_valid


@dataclass(frozen=True)
class CapacityResult:
    """Capacity value plus the witnessing distribution and cluster order."""

    capacity: Fraction
    s: tuple[int, ...]
    pi: tuple[int, ...]
    separate_position: int | None = None
    caveat: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "capacity": {"num": self.capacity.numerator, "den": self.capacity.denominator},
            "s": list(self.s),
            "pi": list(self.pi),
            "separate_position": self.separate_position,
            "caveat": self.caveat,
        }


def vertical_order(
    s: Sequence[int], separate_positions: Iterable[int] = ()
) -> tuple[int, ...]:
    """Round-robin cluster order for distribution s.

    Walks clusters 1..L cyclically, emitting each cluster that still has
    selected nodes left and skipping exhausted ones; positions listed in
    separate_positions emit 0 without advancing the cluster cursor.
    """
    k = sum(s)
    L = len(s) - 1
    separate = set(separate_positions)
    if len(separate) != s[0]:
        raise ValueError(
            f"expected {s[0]} separate positions, got {len(separate)}"
        )
    if any(not 1 <= p <= k for p in separate):
        raise ValueError(f"separate positions {sorted(separate)} out of range 1..{k}")

    quota = list(s[1:])
    out: list[int] = []
    cursor = 0  # 0-based cluster index
    for i in range(1, k + 1):
        if i in separate:
            out.append(0)
            continue
        while quota[cursor] == 0:
            cursor = (cursor + 1) % L
        out.append(cursor + 1)
        quota[cursor] -= 1
        cursor = (cursor + 1) % L
    return tuple(out)


def horizontal_selection(sys: SystemParams, s0: int) -> tuple[int, ...]:
    """Greedy-fill distribution: R nodes per cluster until k - s0 are placed."""
    if not 0 <= s0 <= sys.S:
        raise ValueError(f"s0 = {s0} must be within 0..S = {sys.S}")
    remaining = sys.k - s0
    if remaining < 0 or remaining > sys.L * sys.R:
        raise ValueError(
            f"cannot place k - s0 = {remaining} nodes into L*R = {sys.L * sys.R} cluster slots"
        )
    out = [s0]
    for _ in range(sys.L):
        take = min(sys.R, remaining)
        out.append(take)
        remaining -= take
    return tuple(out)


def capacity_no_separate(sys: SystemParams, rep: RepairParams) -> CapacityResult:
    """Capacity restricted to repair sequences with no separate nodes."""
    require_valid(sys, rep)
    s = horizontal_selection(sys, 0)
    pi = vertical_order(s)
    profile = cut_profile(sys, rep, s, pi)
    return CapacityResult(capacity=profile.mc, s=s, pi=pi)


def capacity_one_separate(sys: SystemParams, rep: RepairParams) -> CapacityResult:
    """Capacity restricted to sequences with exactly one separate node.

    The minimizing position of the separate node is not known in closed
    form, so all k positions are evaluated (ties break to the earliest).
    """
    require_valid(sys, rep)
    if sys.S < 1:
        raise ValueError("capacity_one_separate requires S >= 1")
    s = horizontal_selection(sys, 1)
    best: CapacityResult | None = None
    for j in range(1, sys.k + 1):
        pi = vertical_order(s, {j})
        profile = cut_profile(sys, rep, s, pi)
        if best is None or profile.mc < best.capacity:
            best = CapacityResult(
                capacity=profile.mc, s=s, pi=pi, separate_position=j
            )
    assert best is not None
    return best


def capacity(sys: SystemParams, rep: RepairParams) -> CapacityResult:
    """System capacity: the minimum min-cut over all repair sequences.

    Takes the minimum of the closed-form optima for zero and one separate
    selected nodes.  For S >= 2 the result is flagged as an unproven
    bound, because sequences selecting two or more separate nodes are
    only covered by the brute-force oracle.
    """
    require_valid(sys, rep)
    candidates: list[CapacityResult] = []
    if sys.k <= sys.L * sys.R:
        candidates.append(capacity_no_separate(sys, rep))
    if sys.S >= 1 and sys.k - 1 <= sys.L * sys.R:
        candidates.append(capacity_one_separate(sys, rep))
    if not candidates:
        raise ValueError(
            "no closed-form candidate: selecting at most one separate node "
            f"cannot place k = {sys.k} nodes (L*R = {sys.L * sys.R}); "
            "use the brute-force oracle"
        )
    best = min(candidates, key=lambda r: (r.capacity, r.s))
    if sys.S >= 2:
        best = CapacityResult(
            capacity=best.capacity,
            s=best.s,
            pi=best.pi,
            separate_position=best.separate_position,
            caveat="lower bound not proven closed-form for S >= 2; verify with oracle",
        )
    return best
