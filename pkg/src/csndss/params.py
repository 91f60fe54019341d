"""Model parameters for clustered storage systems with separate nodes.

A system consists of L clusters of R nodes each plus S separate nodes,
n = L*R + S in total.  A file of M symbols is split into k fragments and
MDS-encoded over the n nodes, so any k nodes can rebuild it.  Repairing a
cluster node downloads beta_I symbols from each of d_I intra-cluster
helpers and beta_C from each of d_C cross-cluster helpers; repairing a
separate node downloads beta_S from each of d = d_I + d_C helpers.

All storage/bandwidth quantities are exact rationals (fractions.Fraction)
so capacity computations and oracle comparisons are bit-exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

RationalLike = Fraction | int | str


def parse_rational(value: RationalLike) -> Fraction:
    """Exact rational from "p/q", a decimal string, or an int/Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(str(value).strip())


def as_file_size(value: RationalLike) -> Fraction:
    """Validate and coerce a file size M (must be positive)."""
    m = parse_rational(value)
    if m <= 0:
        raise ValueError(f"file size must be positive, got {m}")
    return m


@dataclass(frozen=True)
class SystemParams:
    """Node-count parameters (n, k, L, R, S) of a clustered system."""

    n: int
    k: int
    L: int
    R: int
    S: int


@dataclass(frozen=True)
class RepairParams:
    """Storage/repair parameters (alpha, d_I, beta_I, d_C, beta_C, beta_S).

    Derived totals: d = d_I + d_C, gamma_I = d_I*beta_I,
    gamma_C = d_C*beta_C, gamma_S = d*beta_S.
    """

    alpha: Fraction
    d_I: int
    beta_I: Fraction
    d_C: int
    beta_C: Fraction
    beta_S: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", parse_rational(self.alpha))
        object.__setattr__(self, "beta_I", parse_rational(self.beta_I))
        object.__setattr__(self, "beta_C", parse_rational(self.beta_C))
        object.__setattr__(self, "beta_S", parse_rational(self.beta_S))

    @property
    def d(self) -> int:
        return self.d_I + self.d_C

    @property
    def gamma_I(self) -> Fraction:
        return self.d_I * self.beta_I

    @property
    def gamma_C(self) -> Fraction:
        return self.d_C * self.beta_C

    @property
    def gamma_S(self) -> Fraction:
        return self.d * self.beta_S


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of parameter validation; carries every violated constraint."""

    ok: bool
    violations: tuple[str, ...]


def validate(sys: SystemParams, rep: RepairParams) -> ValidationReport:
    """Check every model constraint; total (never raises).

    Returns ok iff all constraints hold, otherwise the full list of
    violated constraints by name.
    """
    bad: list[str] = []
    if sys.n < 1 or sys.k < 1 or sys.L < 1 or sys.R < 1:
        bad.append("n, k, L, R >= 1")
    if sys.S < 0:
        bad.append("S >= 0")
    if sys.n != sys.L * sys.R + sys.S:
        bad.append("n == L*R + S")
    if not 1 <= sys.k < sys.n:
        bad.append("1 <= k < n")
    if rep.d_I != sys.R - 1:
        bad.append("d_I == R - 1")
    if rep.d_C < 0:
        bad.append("d_C >= 0")
    if rep.beta_I < rep.beta_C:
        bad.append("beta_I >= beta_C")
    if rep.d < sys.k:
        bad.append("d >= k")
    if rep.d_C > sys.n - sys.R:
        bad.append("d_C <= n - R")
    if rep.d > sys.n - 1:
        bad.append("d <= n - 1")
    if rep.alpha < 0:
        bad.append("alpha >= 0")
    if rep.beta_I < 0:
        bad.append("beta_I >= 0")
    if rep.beta_C < 0:
        bad.append("beta_C >= 0")
    if rep.beta_S < 0:
        bad.append("beta_S >= 0")
    return ValidationReport(ok=not bad, violations=tuple(bad))


class InvalidParamsError(ValueError):
    """Raised by operations whose precondition is a valid parameter set."""

    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("invalid parameters: " + "; ".join(report.violations))


def require_valid(sys: SystemParams, rep: RepairParams) -> None:
    report = validate(sys, rep)
    if not report.ok:
        raise InvalidParamsError(report)


def admissible_dC_range(sys: SystemParams) -> tuple[int, int]:
    """Admissible cross-cluster helper counts (min_dC, max_dC).

    With d_I = R - 1 fixed, d >= k forces d_C >= k - R + 1 (floored at 0),
    and cross-cluster helpers must exist: d_C <= n - R.
    """
    lo = max(sys.k - sys.R + 1, 0)
    hi = sys.n - sys.R
    if lo > hi:
        raise ValueError(f"no admissible d_C: range ({lo}, {hi}) is empty")
    return lo, hi


def read_config(path: str | Path) -> dict[str, str]:
    """Parse a plain-text key=value config file (# starts a comment)."""
    out: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad config line (expected key=value): {raw!r}")
        key, val = line.split("=", 1)
        out[key.strip()] = val.strip()
    return out
