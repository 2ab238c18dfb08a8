"""Exact maximum-flow tools for embedded planar digraphs."""

from .bench import BenchReport, run_bench
from .cutsets import CutSetCollection, all_cutsets, canonical_min_cut, verify_cutset
from .dimacs import Terminals, parse_dimacs, write_dimacs
from .errors import PlanarFlowError
from .flows import (
    CutSet,
    FlowResult,
    ValidationReport,
    brute_force_min_cut,
    max_flow_planar,
    max_flow_reference,
    min_cut_from_flow,
    verify_flow,
)
from .graph import DualGraph, FaceStructure, PlanarDigraph, build_graph, derive_dual, validate_embedding
from .instances import GenSpec, SplitMix64, gen_grid, gen_hard_quadratic, gen_path, gen_random_planar
from .multisink import (
    PairValueTable,
    SinkValueVector,
    all_pairs_values,
    distinct_values,
    k_pairs_values,
    sssk_baseline,
    sssk_fast,
)
from .tables import ValueTableFile, fingerprint

__version__ = "0.1.0"

__all__ = [
    "BenchReport",
    "CutSet",
    "CutSetCollection",
    "DualGraph",
    "FaceStructure",
    "FlowResult",
    "GenSpec",
    "PairValueTable",
    "PlanarDigraph",
    "PlanarFlowError",
    "SinkValueVector",
    "SplitMix64",
    "Terminals",
    "ValidationReport",
    "ValueTableFile",
    "all_cutsets",
    "all_pairs_values",
    "brute_force_min_cut",
    "build_graph",
    "canonical_min_cut",
    "derive_dual",
    "distinct_values",
    "fingerprint",
    "gen_grid",
    "gen_hard_quadratic",
    "gen_path",
    "gen_random_planar",
    "k_pairs_values",
    "max_flow_planar",
    "max_flow_reference",
    "min_cut_from_flow",
    "parse_dimacs",
    "run_bench",
    "sssk_baseline",
    "sssk_fast",
    "validate_embedding",
    "verify_cutset",
    "verify_flow",
    "write_dimacs",
]
