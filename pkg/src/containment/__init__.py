"""Containment: exact solving and verification for edge-cop pursuit on graphs.

Cops occupy edges and win by holding every edge at the robber's vertex; the
classic vertex-pursuit game rides along for comparison.  The package solves
both games exactly by retrograde analysis, extracts optimal strategies,
verifies a battery of structural claims, and serves interactive play over
HTTP.
"""

from .graphs import (
    Graph,
    GraphError,
    Graph6Error,
    from_edge_list,
    generate,
    parse_family,
    parse_graph6,
    to_graph6,
    min_degree,
    max_degree,
    girth,
    domination_number,
    is_isomorphic,
)
from .kernel import (
    COPS,
    ROBBER,
    CONTAINMENT,
    VERTEX_PURSUIT,
    GameState,
    VertexState,
    Rules,
    encode_state,
    decode_state,
)
from .solver import (
    DEFAULT_STATE_CAP,
    COPS_WIN,
    ROBBER_WINS,
    SolveResult,
    SearchOutcome,
    StateCapExceeded,
    solve,
    xi,
    cop_number,
    containment_time,
    extract_strategies,
    dominating_containment_strategy,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphError",
    "Graph6Error",
    "from_edge_list",
    "generate",
    "parse_family",
    "parse_graph6",
    "to_graph6",
    "min_degree",
    "max_degree",
    "girth",
    "domination_number",
    "is_isomorphic",
    "COPS",
    "ROBBER",
    "CONTAINMENT",
    "VERTEX_PURSUIT",
    "GameState",
    "VertexState",
    "Rules",
    "encode_state",
    "decode_state",
    "DEFAULT_STATE_CAP",
    "COPS_WIN",
    "ROBBER_WINS",
    "SolveResult",
    "SearchOutcome",
    "StateCapExceeded",
    "solve",
    "xi",
    "cop_number",
    "containment_time",
    "extract_strategies",
    "dominating_containment_strategy",
    "__version__",
]
