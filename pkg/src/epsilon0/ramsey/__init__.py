"""Finite instances and solvers for pair colorings, tournaments, linear
orders and set families, with brute-force oracles."""

from .instances import (
    PairColoring, Tournament, LinearOrderInstance, SetFamily,
    pair_index, pair_count,
    parse_coloring, format_coloring,
    parse_tournament, format_tournament,
    parse_order, format_order,
)
from .checkers import (
    HomogeneityCheck, TransitivityCheck,
    is_homogeneous, is_transitive,
    tournament_from_coloring, coloring_from_tournament,
    coloring_is_transitive, order_from_transitive_coloring,
)
from .oracles import (
    brute_max_homogeneous, brute_max_transitive,
    has_homogeneous_of_size, has_transitive_of_size,
)
from .solvers import (
    Classification, limit_classification,
    CohResult, EmptyCellError, coh_solve,
    EmResult, em_solve,
    AdsResult, ads_solve,
    SolverTrace, TraceCheck, rt22_solve, verify_trace,
)

__all__ = [
    "PairColoring", "Tournament", "LinearOrderInstance", "SetFamily",
    "pair_index", "pair_count",
    "parse_coloring", "format_coloring", "parse_tournament",
    "format_tournament", "parse_order", "format_order",
    "HomogeneityCheck", "TransitivityCheck", "is_homogeneous", "is_transitive",
    "tournament_from_coloring", "coloring_from_tournament",
    "coloring_is_transitive", "order_from_transitive_coloring",
    "brute_max_homogeneous", "brute_max_transitive",
    "has_homogeneous_of_size", "has_transitive_of_size",
    "Classification", "limit_classification",
    "CohResult", "EmptyCellError", "coh_solve",
    "EmResult", "em_solve", "AdsResult", "ads_solve",
    "SolverTrace", "TraceCheck", "rt22_solve", "verify_trace",
]
