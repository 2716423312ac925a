"""Tandem-duplication distance toolkit.

Core pieces: interned token strings with duplication/contraction moves,
exact bounded contraction search, stable-run kernelization for all-distinct
sources, exact cost-effective-subgraph solvers, and the two reduction
builders with witness generation and replay verification.
"""

from .ces import (
    CesInstance,
    CesSolution,
    Graph,
    ces_cost,
    ces_decide,
    ces_solve_bounded,
    ces_solve_exact,
)
from .kernel import (
    ForeignSymbolError,
    Kernel,
    NotExemplarError,
    StablePartition,
    fpt_solve,
    kernelize,
    maximal_stable_partition,
    stable_pairs,
)
from .reductions import (
    CliqueToCesOutput,
    PhaseCounts,
    ReductionParams,
    TdReduction,
    WitnessSchedule,
    build_witness,
    ces_to_td,
    clique_to_ces,
    clique_to_ces_gap,
    verify_contraction_sequence,
)
from .search import (
    DistanceResult,
    SearchResult,
    WitnessStep,
    decide_td,
    replay_witness,
    td_distance,
)
from .strings import (
    ContractionStep,
    NotASquareError,
    OutOfBoundsError,
    Precheck,
    SymbolTable,
    TdkError,
    TokenString,
    apply_contraction,
    apply_duplication,
    enumerate_squares,
    feasibility_precheck,
)

__all__ = [
    "CesInstance",
    "CesSolution",
    "CliqueToCesOutput",
    "ContractionStep",
    "DistanceResult",
    "ForeignSymbolError",
    "Graph",
    "Kernel",
    "NotASquareError",
    "NotExemplarError",
    "OutOfBoundsError",
    "PhaseCounts",
    "Precheck",
    "ReductionParams",
    "SearchResult",
    "StablePartition",
    "SymbolTable",
    "TdReduction",
    "TdkError",
    "TokenString",
    "WitnessSchedule",
    "WitnessStep",
    "apply_contraction",
    "apply_duplication",
    "build_witness",
    "ces_cost",
    "ces_decide",
    "ces_solve_bounded",
    "ces_solve_exact",
    "ces_to_td",
    "clique_to_ces",
    "clique_to_ces_gap",
    "decide_td",
    "enumerate_squares",
    "feasibility_precheck",
    "fpt_solve",
    "kernelize",
    "maximal_stable_partition",
    "replay_witness",
    "stable_pairs",
    "td_distance",
    "verify_contraction_sequence",
]

__version__ = "0.1.0"
