"""Crown-decomposition kernelization and exact solvers for graph storage
capacity, index coding length, and minrank over prime fields."""

from .crown import (
    CrownConstructionError,
    CrownDecomposition,
    check_crown,
    find_crown_or_matching,
    verify_crown,
)
from .exact import (
    CapExceeded,
    Caps,
    ConfusionGraph,
    DEFAULT_CAPS,
    GFMatrix,
    IndexCode,
    build_confusion_graph,
    chromatic_number,
    clique_cover_index_code,
    clique_cover_minrank_matrix,
    gf_rank,
    independence_number,
    index_coding_length,
    minrank,
    oracle_index_code,
    oracle_storage_code,
    storage_capacity_alpha,
)
from .graph import (
    Graph,
    GraphError,
    K0,
    greedy_clique_cover,
    greedy_maximal_matching,
    induced_subgraph,
    isolated_vertices,
    max_bipartite_matching,
    min_vertex_cover_bipartite,
)
from .kernel import (
    CAPACITY,
    CrownReduction,
    INDEX_CODING,
    IsolatedRemoval,
    MINRANK,
    ReductionTrace,
    apply_crown_rule,
    apply_isolated_rule,
    kernelize,
    lift_value,
    replay_trace,
    verify_trace,
)
from .pipeline import (
    DecisionReport,
    ValueReport,
    compute_values,
    decide_dual_index_coding,
    decide_dual_minrank,
    decide_storage_capacity,
)

__all__ = [name for name in dir() if not name.startswith("_")]
