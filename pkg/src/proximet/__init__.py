"""Exact-arithmetic toolkit for finite semimetric spaces.

Covers nearest-point structure between subsets (best approximations,
best proximity pairs, proximinal and nearest-point graphs), layered
digraphs of the distance order, rigidity classification with two
independent deciders, order-preserving comparison of spaces, and
metric realizers for prescribed graphs.
"""
from .errors import (
    InconsistencyDetected,
    PreconditionError,
    ProximetError,
    ValidationError,
)
from .fileio import (
    graph_from_obj,
    graph_to_obj,
    load_graph,
    load_space,
    save_graph,
    save_space,
    space_from_obj,
    space_to_obj,
)
from .hasse import (
    ALLOWED_FOUR_POINT_SIGNATURES,
    HasseDigraph,
    LevelSignature,
    digraphs_isomorphic,
    digraphs_isomorphic_bruteforce,
    distance_hasse,
    export_dot,
    level_signature,
    reference_digraph,
)
from .proximity import (
    BipartiteGraph,
    FrontierSets,
    best_approximations,
    best_proximity_pairs,
    frontier_sets,
    nearest_point_graph,
    proximinal_graph,
    same_graph,
    set_distance,
)
from .realize import (
    Certificate,
    ConjectureProbe,
    ConjectureScan,
    RealizationResult,
    explore_conjecture,
    realize_matching_wr,
    realize_single_edge_sr,
    realize_ultrametric,
    scan_conjecture,
)
from .rigidity import (
    BestApproxReport,
    ClassificationReport,
    FourPointWitness,
    SmallSpaceReport,
    UbppWitness,
    best_approx_equivalence_report,
    classify,
    is_strongly_rigid,
    is_ubpp_bruteforce,
    is_ubpp_fourpoint,
    is_weakly_rigid,
    random_space,
    small_space_equivalences,
)
from .similarity import (
    Bijection,
    SimilarityVerdict,
    find_similarity,
    find_weak_similarity,
    is_weak_similarity,
    weakly_similar_to_xstar,
    x_star,
)
from .spaces import (
    Dist,
    SemimetricSpace,
    distance_ranks,
    distance_set,
    from_rational_points,
    is_metric,
    is_ultrametric_space,
    subspace,
    validate_space,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
