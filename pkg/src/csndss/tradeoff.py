"""Optimal storage/bandwidth tradeoff curves.

For fixed download degrees the capacity is a piecewise-linear, concave,
non-decreasing function of either the per-node storage alpha or the
cross-cluster download beta_C, so the feasibility boundary C >= M is
solved exactly on rational breakpoints instead of by search.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .mincut import CutProfile, cut_profile
from .optimal import capacity, horizontal_selection, vertical_order
from .params import (
    RationalLike,
    RepairParams,
    SystemParams,
    as_file_size,
    parse_rational,
    require_valid,
)


class InfeasibleError(ValueError):
    """No parameter value reaches capacity M; carries the deficit."""

    def __init__(self, message: str, deficit: Fraction):
        self.deficit = deficit
        super().__init__(f"{message} (deficit {deficit})")


@dataclass(frozen=True)
class TradeoffPoint:
    """One point of a tradeoff curve; alpha is None when infeasible."""

    beta_C: Fraction
    beta_I: Fraction
    alpha: Fraction | None
    gamma: Fraction | None
    capacity: Fraction | None

    @property
    def feasible(self) -> bool:
        return self.alpha is not None


def _candidate_profiles(sys: SystemParams, rep: RepairParams) -> list[CutProfile]:
    """Cut profiles whose pointwise minimum is the capacity (s_0 <= 1)."""
    profiles: list[CutProfile] = []
    if sys.k <= sys.L * sys.R:
        s = horizontal_selection(sys, 0)
        profiles.append(cut_profile(sys, rep, s, vertical_order(s)))
    if sys.S >= 1 and sys.k - 1 <= sys.L * sys.R:
        s = horizontal_selection(sys, 1)
        for j in range(1, sys.k + 1):
            profiles.append(cut_profile(sys, rep, s, vertical_order(s, {j})))
    if not profiles:
        raise ValueError("no closed-form profile: k exceeds L*R + 1 selected slots")
    return profiles


def _smallest_alpha(weights: Sequence[Fraction], M: Fraction) -> Fraction:
    """Least alpha with sum_i min(w_i, alpha) >= M, for fixed weights."""
    w = sorted(weights, reverse=True)
    k = len(w)
    total = sum(w, start=Fraction(0))
    if total < M:
        raise InfeasibleError(f"profile weight total {total} < M = {M}", M - total)
    tail = Fraction(0)  # sum of w[j:] while scanning j = k..1
    for j in range(k, 0, -1):
        candidate = (M - tail) / j
        lower = w[j] if j < k else Fraction(0)
        if lower <= candidate <= w[j - 1]:
            return candidate
        tail += w[j - 1]
    raise AssertionError("piecewise-linear alpha solve found no segment")


def min_alpha(sys: SystemParams, rep: RepairParams, M: RationalLike) -> Fraction:
    """Smallest per-node storage with capacity >= M at rep's bandwidths.

    rep.alpha is ignored.  The capacity is the minimum over the candidate
    profiles, each piecewise linear in alpha, so the answer is the
    largest of the per-profile crossings.  Always >= M/k.
    """
    M = as_file_size(M)
    probe = replace(rep, alpha=Fraction(0))
    require_valid(sys, probe)
    return max(_smallest_alpha(p.w, M) for p in _candidate_profiles(sys, probe))


def _smallest_scale(
    terms: Sequence[tuple[Fraction, Fraction]], alpha: Fraction, M: Fraction
) -> Fraction:
    """Least x >= 0 with sum_i min(m_i*x + q_i, alpha) >= M (m, q >= 0)."""
    limit = sum(
        (alpha if m > 0 else min(q, alpha) for m, q in terms), start=Fraction(0)
    )
    if limit < M:
        raise InfeasibleError(f"capacity is bounded by {limit} < M = {M}", M - limit)
    value = sum((min(q, alpha) for _, q in terms), start=Fraction(0))
    if value >= M:
        return Fraction(0)
    breaks = sorted(
        {(alpha - q) / m for m, q in terms if m > 0 and q < alpha}
    )
    x = Fraction(0)
    for brk in breaks:
        slope = sum(
            (m for m, q in terms if m > 0 and q < alpha and (alpha - q) / m > x),
            start=Fraction(0),
        )
        step = brk - x
        if value + slope * step >= M:
            return x + (M - value) / slope
        value += slope * step
        x = brk
    raise AssertionError("piecewise-linear scale solve found no segment")


def min_betaC(
    sys: SystemParams,
    rep: RepairParams,
    M: RationalLike,
    ratio: RationalLike = 2,
) -> Fraction:
    """Smallest beta_C with capacity >= M at fixed alpha and beta_I = ratio*beta_C.

    rep supplies alpha, the degrees and beta_S; its beta_I/beta_C fields
    are ignored.  ratio must be >= 1 so beta_I >= beta_C holds along the
    sweep.
    """
    M = parse_rational(M)
    if M < 0:
        raise ValueError(f"M must be non-negative, got {M}")
    ratio = parse_rational(ratio)
    if ratio < 1:
        raise ValueError(f"ratio beta_I/beta_C must be >= 1, got {ratio}")
    probe = replace(rep, beta_I=ratio, beta_C=Fraction(1))
    require_valid(sys, probe)
    if M == 0:
        return Fraction(0)
    best = Fraction(0)
    for profile in _candidate_profiles(sys, probe):
        terms = []
        for a, b, c in zip(profile.a, profile.b, profile.c):
            if c is not None:
                terms.append((Fraction(0), c * rep.beta_S))
            else:
                terms.append((a * ratio + b, Fraction(0)))
        best = max(best, _smallest_scale(terms, rep.alpha, M))
    return best


def tradeoff_curve(
    sys: SystemParams,
    ratio: RationalLike,
    d_C: int,
    M: RationalLike,
    sweep: Sequence[RationalLike],
    beta_S: RationalLike = 0,
) -> list[TradeoffPoint]:
    """Minimum storage for each swept beta_C, with beta_I = ratio*beta_C.

    Infeasible sweep points are returned with alpha=None rather than
    aborting the curve.
    """
    ratio = parse_rational(ratio)
    M = as_file_size(M)
    beta_S = parse_rational(beta_S)
    points: list[TradeoffPoint] = []
    for raw in sweep:
        bC = parse_rational(raw)
        rep = RepairParams(
            alpha=Fraction(0),
            d_I=sys.R - 1,
            beta_I=ratio * bC,
            d_C=d_C,
            beta_C=bC,
            beta_S=beta_S,
        )
        gamma = rep.gamma_I + rep.gamma_C
        try:
            alpha = min_alpha(sys, rep, M)
        except InfeasibleError:
            points.append(
                TradeoffPoint(beta_C=bC, beta_I=rep.beta_I, alpha=None, gamma=gamma, capacity=None)
            )
            continue
        achieved = capacity(sys, replace(rep, alpha=alpha)).capacity
        points.append(
            TradeoffPoint(
                beta_C=bC, beta_I=rep.beta_I, alpha=alpha, gamma=gamma, capacity=achieved
            )
        )
    return points
