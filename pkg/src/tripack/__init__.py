"""Edge-disjoint triangle packings in K4-free graphs via greedy clique partitions."""

from .bounds import (
    QuarterInt,
    claim_r2_check,
    conjecture_nice_check,
    f_value,
    g_value,
    k_value,
    multipartite_g,
    trianglefree_check,
)
from .errors import (
    ContractError,
    InternalError,
    ParseError,
    PartitionError,
    PreconditionError,
    SizeError,
    TraceError,
    TripackError,
)
from .graph import (
    Graph,
    Triangle,
    VertexStats,
    clique_number_at_most,
    parse_edge_list,
    parse_graph6,
    replace_by_copy,
    to_graph6,
    triangles,
    vertex_stats,
)
from .packing import TrianglePacking, extract_packing, is_edge_disjoint, residue_classes
from .partition import (
    GGP,
    GreedyPartition,
    build_greedy_partition,
    contract_head,
    ggp_size,
    validate_ggp,
    validate_greedy,
)
from .symmetrize import (
    NonEdgeMatching,
    SymmetrizationTrace,
    nonedge_matching,
    run_symm_alg,
    symm_sub_match,
    symm_sub_merge,
    verify_trace,
)

__version__ = "0.1.0"
