"""Distance-r dominating set approximation on sparse graphs.

Sequential pipeline: a linear order with small weak-reachability sets yields
sparse neighborhood covers, an order-greedy dominating set whose size is
certified against the measured cover degree, and two constructions that make
the set connected.  A deterministic synchronous round simulator runs the same
algorithms as message-passing protocols and checks they produce bit-identical
results.
"""

from .connect import (
    ConnectedResult,
    DominationError,
    DPartition,
    MinorGraph,
    connect_via_minor,
    connect_via_wreach,
    contract_minor,
    d_partition,
    lex_shortest_path,
)
from .covers import Cover, RSets, build_cover, build_rsets, verify_cover
from .domset import DomSetResult, domset, restricted_bfs, sort_adjacency
from .graph import Ball, Graph, GraphFormatError, build_graph, generate, load_graph
from .ordering import (
    LinearOrder,
    WReachTable,
    degeneracy_order,
    heuristic_wcol_order,
    natural_order,
    wcol_value,
    wreach,
)
from .sim import (
    BandwidthViolation,
    Message,
    SimConfig,
    SimModel,
    VertexProcess,
    run,
)

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "BandwidthViolation",
    "ConnectedResult",
    "Cover",
    "DomSetResult",
    "DominationError",
    "DPartition",
    "Graph",
    "GraphFormatError",
    "LinearOrder",
    "Message",
    "MinorGraph",
    "RSets",
    "SimConfig",
    "SimModel",
    "VertexProcess",
    "WReachTable",
    "build_cover",
    "build_graph",
    "build_rsets",
    "connect_via_minor",
    "connect_via_wreach",
    "contract_minor",
    "d_partition",
    "degeneracy_order",
    "domset",
    "generate",
    "heuristic_wcol_order",
    "lex_shortest_path",
    "load_graph",
    "natural_order",
    "restricted_bfs",
    "run",
    "sort_adjacency",
    "verify_cover",
    "wcol_value",
    "wreach",
]
