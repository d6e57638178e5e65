"""Distance-cospectral graph constructions, verification and small-graph mining."""
from .graph import (
    DisconnectedGraphError,
    Graph,
    Graph6Error,
    GraphError,
    distance_matrix,
    from_edge_list,
    from_graph6,
    identify,
    is_bipartite,
    is_connected,
    to_graph6,
)
from .canon import are_isomorphic, canonical_form
from .exact import char_poly, distance_cospectral

__version__ = "0.1.0"
