"""Generalized degree centrality: ``(I + eps L) x = d`` and its axiomatic checks."""

from .axioms import (
    AxiomReport,
    ReasonablenessBound,
    arm_falsification,
    check_anonymity,
    check_arm,
    check_iic,
    check_scb,
    property_suite,
    reasonable_epsilon_max,
    verify_witness,
)
from .errors import (
    EdgeStateError,
    GenDegreeError,
    InvalidSizeError,
    LoopError,
    MalformedInputError,
    NumericError,
    ParameterError,
    SizeLimitError,
    UndefinedError,
)
from .graph import (
    Graph,
    add_edge,
    balanced_adjacency,
    complete,
    components,
    cycle,
    degree,
    laplacian,
    parse_edge_list,
    path,
    read_edge_list,
    remove_edge,
    star,
    symmetric_pairs,
)
from .solver import (
    CentralityVector,
    NeumannTrace,
    centrality_index,
    generalized_degree,
    generalized_degree_exact,
    generalized_degree_neumann,
    iterated_degree,
    solitariness,
)
from .sweep import Grid, RankingResult, WatershedReport, rank, stable_ranking_intervals, sweep, watersheds

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "CentralityVector",
    "EdgeStateError",
    "GenDegreeError",
    "Graph",
    "Grid",
    "InvalidSizeError",
    "LoopError",
    "MalformedInputError",
    "NeumannTrace",
    "NumericError",
    "ParameterError",
    "RankingResult",
    "ReasonablenessBound",
    "SizeLimitError",
    "UndefinedError",
    "WatershedReport",
    "add_edge",
    "arm_falsification",
    "balanced_adjacency",
    "centrality_index",
    "check_anonymity",
    "check_arm",
    "check_iic",
    "check_scb",
    "complete",
    "components",
    "cycle",
    "degree",
    "generalized_degree",
    "generalized_degree_exact",
    "generalized_degree_neumann",
    "iterated_degree",
    "laplacian",
    "parse_edge_list",
    "path",
    "property_suite",
    "rank",
    "read_edge_list",
    "reasonable_epsilon_max",
    "remove_edge",
    "solitariness",
    "stable_ranking_intervals",
    "star",
    "sweep",
    "symmetric_pairs",
    "verify_witness",
    "watersheds",
]
