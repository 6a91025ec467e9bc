"""Exact and approximate independent-set algorithms for graphs without long induced paths."""

from .approx import ApproxReport, approx_mis_broomfree, greedy_step_bound_check
from .errors import (
    CapacityError,
    GraphInputError,
    InternalError,
    NotBroomFreeError,
    NotPtFreeError,
    PatternFoundError,
    PtFreeError,
    SamplingError,
)
from .generators import (
    Promise,
    Reduction,
    gen_clawfree_scattered,
    gen_ctfree_scattered,
    gen_p5free_scattered3,
    gen_subdivision,
    sample_free_graph,
)
from .graph import Graph, connected_components, find_induced, find_induced_path, induced_subgraph
from .oracle import OracleLimit, certify_free, oracle_mwis, oracle_scattered
from .separator import SeparatorResult, gyarfas_separator
from .solver import SolveReport, branch_on_vertex, solve_mwis_ptfree, solve_scattered_ptfree
from .treewidth import TreeDecomposition, decompose_bounded_degree, decompose_peeled, validate_decomposition
from .twdp import NiceDecomposition, ScatteredParams, make_nice, mwis_on_decomposition, scattered_on_decomposition

__all__ = [
    "ApproxReport", "CapacityError", "Graph", "GraphInputError", "InternalError", "NiceDecomposition",
    "NotBroomFreeError", "NotPtFreeError", "OracleLimit", "PatternFoundError", "Promise", "PtFreeError",
    "Reduction", "SamplingError", "ScatteredParams", "SeparatorResult", "SolveReport", "TreeDecomposition",
    "approx_mis_broomfree", "branch_on_vertex", "certify_free", "connected_components", "decompose_bounded_degree",
    "decompose_peeled", "find_induced", "find_induced_path", "gen_clawfree_scattered", "gen_ctfree_scattered",
    "gen_p5free_scattered3", "gen_subdivision", "greedy_step_bound_check", "gyarfas_separator", "induced_subgraph",
    "make_nice", "mwis_on_decomposition", "oracle_mwis", "oracle_scattered", "sample_free_graph",
    "scattered_on_decomposition", "solve_mwis_ptfree", "solve_scattered_ptfree", "validate_decomposition",
]
