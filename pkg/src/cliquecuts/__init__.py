"""Laminar cut decompositions and clique immersion certificates."""

from .flow import (
    CutResult,
    FanInfeasible,
    PathSystem,
    Trail,
    directed_edge_connectivity,
    directed_min_cut,
    edge_connectivity,
    menger_fan,
    min_cut,
)
from .generate import (
    random_eulerian_digraph,
    random_multigraph,
    simple_eulerian_min_outdeg,
)
from .gomoryhu import GomoryHuTree, TreeEdge, build_gomory_hu
from .graphs import (
    EdgeRecord,
    GraphError,
    MultiGraph,
    NotEulerianError,
    ParseError,
    ProvenanceMap,
    parse_graph,
    serialize_graph,
    split_off,
)
from .immersion import (
    ImmersionCertificate,
    LaminarDecomposition,
    SelectedCut,
    TerminalCutTooSmall,
    ThickStar,
    VerificationReport,
    brute_force_immersion,
    cut_threshold,
    cuts_uncrossed,
    decompose_directed,
    decompose_undirected,
    extract_clique_immersion,
    extract_directed_clique_immersion,
    first_crossing_pair,
    outcome_from_json,
    outcome_to_json,
    pattern_edges,
    thick_star,
    thick_star_route,
    verify_certificate,
    verify_decomposition,
)
from .transform import (
    Arborescence,
    NoAdmissiblePairError,
    PackInfeasible,
    ReducedDigraph,
    admissible_split,
    arborescence_path,
    pack_arborescences,
    reduce_to_terminals,
)

__all__ = [
    "Arborescence",
    "CutResult",
    "EdgeRecord",
    "FanInfeasible",
    "GomoryHuTree",
    "GraphError",
    "ImmersionCertificate",
    "LaminarDecomposition",
    "MultiGraph",
    "NoAdmissiblePairError",
    "NotEulerianError",
    "PackInfeasible",
    "ParseError",
    "PathSystem",
    "ProvenanceMap",
    "ReducedDigraph",
    "SelectedCut",
    "TerminalCutTooSmall",
    "ThickStar",
    "Trail",
    "TreeEdge",
    "VerificationReport",
    "admissible_split",
    "arborescence_path",
    "brute_force_immersion",
    "build_gomory_hu",
    "cut_threshold",
    "cuts_uncrossed",
    "decompose_directed",
    "decompose_undirected",
    "directed_edge_connectivity",
    "directed_min_cut",
    "edge_connectivity",
    "extract_clique_immersion",
    "extract_directed_clique_immersion",
    "first_crossing_pair",
    "menger_fan",
    "min_cut",
    "outcome_from_json",
    "outcome_to_json",
    "pack_arborescences",
    "parse_graph",
    "pattern_edges",
    "random_eulerian_digraph",
    "random_multigraph",
    "reduce_to_terminals",
    "simple_eulerian_min_outdeg",
    "serialize_graph",
    "split_off",
    "thick_star",
    "thick_star_route",
    "verify_certificate",
    "verify_decomposition",
]
