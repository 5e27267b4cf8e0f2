# -*- coding: utf-8 -*-
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from skyfed.seeding import derive_seed
from skyfed.topology import Topology, SwarmConfig, adjacency_matrix
from skyfed.topology import graph_from_adjacency, link_threshold
from .exceptions import ClusteringError, UnclusterableError
from .kmeans import kmeans, DEFAULT_MAX_ITERS


logger = logging.getLogger(__name__)

DEFAULT_RESTARTS = 8


@dataclass(frozen=True, eq=False)
class ClusterLayout:
    """
    Result of clustering the swarm.

    ``ch_graph`` has one node per cluster index ``0..Q-1``; the UAV id of a
    cluster's head is stored in ``heads`` and as node attribute ``head``.
    """

    assignment: np.ndarray
    centroids: np.ndarray
    heads: Tuple[int, ...]
    ch_graph: nx.Graph = field(repr=False)
    sigma: float

    @property
    def num_clusters(self) -> int:
        return len(self.heads)

    def members(self, cluster: int) -> List[int]:
        return [int(u) for u in np.flatnonzero(self.assignment == cluster)]

    def training_members(self, cluster: int) -> List[int]:
        """Members of ``cluster`` except its head, in ascending id order."""
        head = self.heads[cluster]
        return [u for u in self.members(cluster) if u != head]

    def training_uavs(self) -> List[int]:
        heads = set(self.heads)
        return [u for u in range(len(self.assignment)) if u not in heads]

    def cluster_sizes(self) -> List[int]:
        return np.bincount(self.assignment, minlength=self.num_clusters).tolist()


def select_heads(
    positions: np.ndarray, assignment: np.ndarray, centroids: np.ndarray
) -> Tuple[int, ...]:
    """
    The member of each cluster closest to its centroid, smallest UAV id on
    ties.

    Examples
    --------
    >>> points = np.array([[0.0, 0.0], [10.0, 0.0], [20.0, 0.0]])
    >>> select_heads(points, np.array([0, 0, 0]), np.array([[10.0, 0.0]]))
    (1,)
    """
    positions = np.asarray(positions, dtype=np.float64)
    heads = []
    for cluster, centroid in enumerate(centroids):
        members = np.flatnonzero(assignment == cluster)
        if members.size == 0:
            raise ClusteringError(f"Cluster {cluster} has no members")
        distances = np.sum((positions[members] - centroid) ** 2, axis=1)
        heads.append(int(members[np.argmin(distances)]))
    return tuple(heads)


def build_ch_graph(
    heads: Sequence[int], positions: np.ndarray, sigma: float
) -> nx.Graph:
    """
    Link every pair of cluster heads at most ``sigma`` apart.

    Nodes are cluster indices; the head's UAV id is kept as node attribute
    ``head``.
    """
    if sigma <= 0:
        raise ClusteringError(f"Cluster head link threshold must be positive: {sigma}")
    head_positions = np.asarray(positions, dtype=np.float64)[list(heads)]
    graph = graph_from_adjacency(adjacency_matrix(head_positions, sigma))
    nx.set_node_attributes(graph, dict(enumerate(int(h) for h in heads)), "head")
    return graph


def layout_for(
    positions: np.ndarray,
    num_clusters: int,
    sigma: float,
    seed: int,
    max_iters: int = DEFAULT_MAX_ITERS,
) -> ClusterLayout:
    """k-means, head selection and cluster head graph for one value of Q."""
    assignment, centroids = kmeans(positions, num_clusters, seed, max_iters)
    heads = select_heads(positions, assignment, centroids)
    return ClusterLayout(
        assignment=assignment,
        centroids=centroids,
        heads=heads,
        ch_graph=build_ch_graph(heads, positions, sigma),
        sigma=sigma,
    )


def heads_cover_members(layout: ClusterLayout, positions: np.ndarray) -> bool:
    """True if every UAV is at most ``layout.sigma`` from its cluster head."""
    positions = np.asarray(positions, dtype=np.float64)
    heads = positions[[layout.heads[q] for q in layout.assignment]]
    squared = np.sum((positions - heads) ** 2, axis=1)
    return bool(np.all(squared <= layout.sigma * layout.sigma))


def is_valid_layout(layout: ClusterLayout, positions: np.ndarray) -> bool:
    """Connected cluster head graph and every member within reach of its head."""
    return nx.is_connected(layout.ch_graph) and heads_cover_members(layout, positions)


def restart_seed(seed: int, num_clusters: int, restart: int) -> int:
    """k-means seed of one restart; restart 0 uses ``seed`` itself."""
    if restart == 0:
        return seed
    return derive_seed(seed, num_clusters, restart, "kmeans")


def mean_ch_hops(layout: ClusterLayout) -> float:
    """Mean hop count between cluster heads over the cluster head graph."""
    if layout.num_clusters == 1:
        return 0.0
    return float(nx.average_shortest_path_length(layout.ch_graph))


def search_layout(
    positions: np.ndarray,
    num_clusters: int,
    sigma: float,
    seed: int,
    restarts: int = DEFAULT_RESTARTS,
    max_iters: int = DEFAULT_MAX_ITERS,
) -> Optional[ClusterLayout]:
    """
    Best valid layout with ``num_clusters`` clusters over ``restarts``
    k-means runs, or ``None`` if no run is valid.

    The best layout has the fewest mean hops between cluster heads, the
    earliest restart on ties.
    """
    if restarts < 1:
        raise ClusteringError(f"Need at least one k-means restart, got {restarts}")
    best, best_hops = None, np.inf
    for restart in range(restarts):
        layout = layout_for(
            positions,
            num_clusters,
            sigma,
            restart_seed(seed, num_clusters, restart),
            max_iters,
        )
        if not is_valid_layout(layout, positions):
            continue
        hops = mean_ch_hops(layout)
        if hops < best_hops:
            best, best_hops = layout, hops
    return best


def cluster_swarm(
    topology: Topology,
    config: SwarmConfig,
    max_iters: int = DEFAULT_MAX_ITERS,
    restarts: int = DEFAULT_RESTARTS,
) -> ClusterLayout:
    """
    Smallest number of clusters whose heads form a connected graph under
    ``sigma`` and reach each of their members within ``sigma``.

    Tries Q = 1, 2, ... and returns the layout :func:`search_layout` finds
    for the first Q with a valid k-means restart. Restart seeds derive from
    ``config.rng_seed``.

    Raises
    ------
    UnclusterableError
        When even one cluster per UAV leaves the head graph disconnected.
    """
    sigma = link_threshold(config.comm_range, config.max_drift)
    for num_clusters in range(1, topology.num_uavs + 1):
        # one cluster per UAV is the same layout for every seed
        tries = 1 if num_clusters == topology.num_uavs else restarts
        layout = search_layout(
            topology.positions, num_clusters, sigma, config.rng_seed, tries, max_iters
        )
        if layout is not None:
            logger.info(
                f"Clustered {topology.num_uavs} UAVs into {num_clusters} clusters "
                f"(sigma={sigma} m, {mean_ch_hops(layout):.2f} mean head hops)"
            )
            return layout
        logger.debug(f"No valid layout with Q={num_clusters}")
    raise UnclusterableError(
        f"unclusterable under sigma={sigma} m: cluster heads of {topology.num_uavs} "
        f"UAVs stay disconnected up to one cluster per UAV"
    )


def stretched_ch_links(layout: ClusterLayout, topology: Topology) -> List[Tuple[int, int]]:
    """
    Cluster head links of ``layout`` whose heads are out of radio range in
    ``topology``.
    """
    stretched = []
    for a, b in sorted(layout.ch_graph.edges()):
        if not topology.is_linked(layout.heads[a], layout.heads[b]):
            stretched.append((min(a, b), max(a, b)))
    return stretched
