from .config import SwarmConfig, link_threshold
from .exceptions import TopologyError, InfeasibleDensityError
from .swarm import (
    Topology,
    adjacency_matrix,
    apply_drift,
    deploy_swarm,
    graph_from_adjacency,
    is_connected,
    shortest_path_hops,
    MAX_DEPLOY_ATTEMPTS,
)
