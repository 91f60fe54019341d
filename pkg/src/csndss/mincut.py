"""Closed-form min-cut evaluation for repair sequences.

A repair sequence of the k collector-connected nodes is described by a
selected node distribution s = (s_0, s_1, ..., s_L) (how many selected
nodes sit in the separate pool and in each cluster, clusters relabeled so
s_1 >= s_2 >= ... >= s_L) together with a cluster order
pi = (pi_1, ..., pi_k), pi_i in {0, 1, ..., L} with 0 meaning a separate
node.  For each position the cut contribution ("part incoming weight") is

    cluster node:   w_i = a_i*beta_I + b_i*beta_C
                    a_i = d_I + 1 - h(i)
                    b_i = max(d_C - (i - h(i)), 0)
    separate node:  w_i = c_i*beta_S,  c_i = d - (i - 1)

where h(i) counts how many of the first i positions share pi_i's cluster
(the node's relative location).  The min-cut of the corresponding
information flow graph, under the worst-case helper selection policy
(newcomers download from previously repaired nodes first), is

    MC(s, pi) = sum_i min(w_i, alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .params import RepairParams, SystemParams, require_valid


def relative_locations(pi: Sequence[int]) -> tuple[int, ...]:
    """h(i) = number of positions j <= i with pi_j == pi_i.

    Separate positions (pi_i == 0) are counted among themselves; their h
    value is unused by the weight formulas.
    """
    seen: dict[int, int] = {}
    out = []
    for symbol in pi:
        seen[symbol] = seen.get(symbol, 0) + 1
        out.append(seen[symbol])
    return tuple(out)


def check_distribution(sys: SystemParams, s: Sequence[int]) -> None:
    """Reject vectors outside the admissible set of selected distributions.

    Inputs whose cluster part is not non-increasing are rejected rather
    than silently sorted, so order-membership checks stay unambiguous.
    """
    if len(s) != sys.L + 1:
        raise ValueError(f"s must have L+1 = {sys.L + 1} components, got {len(s)}")
    if any(x < 0 for x in s):
        raise ValueError(f"s components must be non-negative: {tuple(s)}")
    if s[0] > sys.S:
        raise ValueError(f"s_0 = {s[0]} exceeds separate node count S = {sys.S}")
    if any(x > sys.R for x in s[1:]):
        raise ValueError(f"cluster components of {tuple(s)} exceed R = {sys.R}")
    if any(s[i] < s[i + 1] for i in range(1, sys.L)):
        raise ValueError(f"cluster components of {tuple(s)} are not non-increasing")
    if sum(s) != sys.k:
        raise ValueError(f"components of {tuple(s)} must sum to k = {sys.k}")


def order_matches(s: Sequence[int], pi: Sequence[int]) -> bool:
    """True iff pi is a cluster order for distribution s."""
    if len(pi) != sum(s):
        return False
    counts = [0] * len(s)
    for symbol in pi:
        if not 0 <= symbol < len(s):
            return False
        counts[symbol] += 1
    return counts == list(s)


@dataclass(frozen=True)
class CutProfile:
    """Per-position cut coefficients and weights for one (s, pi).

    a, b are set at cluster positions (None elsewhere); c is set at
    separate positions (None elsewhere).  mc = sum_i min(w_i, alpha).
    """

    h: tuple[int, ...]
    a: tuple[int | None, ...]
    b: tuple[int | None, ...]
    c: tuple[int | None, ...]
    w: tuple[Fraction, ...]
    mc: Fraction

    def to_json_dict(self) -> dict:
        return {
            "h": list(self.h),
            "a": list(self.a),
            "b": list(self.b),
            "c": list(self.c),
            "w": [str(x) for x in self.w],
            "mc": str(self.mc),
        }


def cut_profile(
    sys: SystemParams,
    rep: RepairParams,
    s: Sequence[int],
    pi: Sequence[int],
) -> CutProfile:
    """Evaluate the closed-form min-cut MC(s, pi) and its coefficients."""
    require_valid(sys, rep)
    check_distribution(sys, s)
    if not order_matches(s, pi):
        raise ValueError(f"pi = {tuple(pi)} is not a cluster order for s = {tuple(s)}")

    h = relative_locations(pi)
    a: list[int | None] = []
    b: list[int | None] = []
    c: list[int | None] = []
    w: list[Fraction] = []
    for i, symbol in enumerate(pi, start=1):
        if symbol == 0:
            ci = rep.d - (i - 1)
            a.append(None)
            b.append(None)
            c.append(ci)
            w.append(ci * rep.beta_S)
        else:
            ai = rep.d_I + 1 - h[i - 1]
            bi = max(rep.d_C - (i - h[i - 1]), 0)
            a.append(ai)
            b.append(bi)
            c.append(None)
            w.append(ai * rep.beta_I + bi * rep.beta_C)
    mc = sum((min(x, rep.alpha) for x in w), start=Fraction(0))
    return CutProfile(h=h, a=tuple(a), b=tuple(b), c=tuple(c), w=tuple(w), mc=mc)


def enumerate_distributions(sys: SystemParams, s0: int) -> list[tuple[int, ...]]:
    """All selected node distributions with first component s0.

    Cluster parts are the partitions of k - s0 into at most L parts, each
    at most R, listed largest-first (reverse lexicographic).
    """
    if not 0 <= s0 <= sys.S:
        raise ValueError(f"s0 = {s0} must be within 0..S = {sys.S}")
    remaining = sys.k - s0
    if remaining < 0 or remaining > sys.L * sys.R:
        raise ValueError(
            f"no distribution exists: k - s0 = {remaining} not within 0..L*R = {sys.L * sys.R}"
        )

    def parts(total: int, slots: int, cap: int) -> Iterator[tuple[int, ...]]:
        if slots == 0:
            if total == 0:
                yield ()
            return
        if total == 0:
            yield (0,) * slots
            return
        lo = -(-total // slots)  # smallest feasible leading part
        for first in range(min(cap, total), lo - 1, -1):
            for rest in parts(total - first, slots - 1, first):
                yield (first, *rest)

    return [(s0, *p) for p in parts(remaining, sys.L, sys.R)]


def enumerate_orders(s: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Every multiset permutation of {0^s0, 1^s1, ..., L^sL}, exactly once.

    Yields in ascending lexicographic order, which fixes test fixtures.
    """
    counts = list(s)
    k = sum(counts)
    prefix: list[int] = []

    def gen() -> Iterator[tuple[int, ...]]:
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for symbol, left in enumerate(counts):
            if left == 0:
                continue
            counts[symbol] -= 1
            prefix.append(symbol)
            yield from gen()
            prefix.pop()
            counts[symbol] += 1

    return gen()


def count_orders(s: Sequence[int]) -> int:
    """|Pi(s)|: the multinomial coefficient k! / prod(s_i!)."""
    total = math.factorial(sum(s))
    for x in s:
        total //= math.factorial(x)
    return total
