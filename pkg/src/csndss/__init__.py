"""Exact capacity and storage/repair-bandwidth tradeoffs for clustered
distributed storage systems with separate nodes, plus a minimum-storage
code simulator with interference-aligned repair."""

from .params import (
    InvalidParamsError,
    RepairParams,
    SystemParams,
    ValidationReport,
    admissible_dC_range,
    parse_rational,
    validate,
)
from .mincut import (
    CutProfile,
    count_orders,
    cut_profile,
    enumerate_distributions,
    enumerate_orders,
    relative_locations,
)
from .optimal import (
    CapacityResult,
    capacity,
    capacity_no_separate,
    capacity_one_separate,
    horizontal_selection,
    vertical_order,
)
from .flowgraph import (
    BudgetExceededError,
    FlowGraph,
    brute_force_capacity,
    build_ifg,
    max_flow,
)
from .tradeoff import (
    InfeasibleError,
    TradeoffPoint,
    min_alpha,
    min_betaC,
    tradeoff_curve,
)

__all__ = [
    "BudgetExceededError",
    "CapacityResult",
    "CutProfile",
    "FlowGraph",
    "InfeasibleError",
    "InvalidParamsError",
    "RepairParams",
    "SystemParams",
    "TradeoffPoint",
    "ValidationReport",
    "admissible_dC_range",
    "brute_force_capacity",
    "build_ifg",
    "capacity",
    "capacity_no_separate",
    "capacity_one_separate",
    "count_orders",
    "cut_profile",
    "enumerate_distributions",
    "enumerate_orders",
    "horizontal_selection",
    "max_flow",
    "min_alpha",
    "min_betaC",
    "parse_rational",
    "relative_locations",
    "tradeoff_curve",
    "validate",
    "vertical_order",
]

__version__ = "0.1.0"
