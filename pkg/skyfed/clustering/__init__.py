from .exceptions import ClusteringError, UnclusterableError
from .kmeans import kmeans, DEFAULT_MAX_ITERS
from .layout import (
    ClusterLayout,
    DEFAULT_RESTARTS,
    build_ch_graph,
    cluster_swarm,
    heads_cover_members,
    is_valid_layout,
    layout_for,
    mean_ch_hops,
    search_layout,
    select_heads,
    stretched_ch_links,
)
