# -*- coding: utf-8 -*-
"""
Hop-weighted message accounting.

One exchange is one model copy crossing one link. Uploads towards an
aggregator and the return of the aggregated model are both counted, along
shortest paths.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional

import networkx as nx
import numpy as np

from skyfed.clustering import ClusterLayout
from skyfed.topology import Topology
from .exceptions import RoutingError


logger = logging.getLogger(__name__)


class Scheme(str, Enum):
    CONVENTIONAL = "conventional"
    FCA = "fca"
    KHA = "kha"


@dataclass(frozen=True)
class MessageCount:
    intra_cluster: int = 0
    inter_cluster: int = 0

    @property
    def total(self) -> int:
        return self.intra_cluster + self.inter_cluster


def pick_aggregator(population: int, seed: int) -> int:
    """Uniformly chosen aggregator index in ``0..population-1``."""
    return int(np.random.default_rng([seed, population]).integers(population))


def _hops_from(graph: nx.Graph, source: int) -> Dict[int, int]:
    return nx.single_source_shortest_path_length(graph, source)


def count_conventional(topology: Topology, aggregator: int) -> MessageCount:
    """
    Every UAV uploads to ``aggregator`` and receives the global model back.

    Examples
    --------
    >>> import numpy as np
    >>> path = Topology.from_positions(np.array([[0., 0.], [1., 0.], [2., 0.]]), 1.0)
    >>> count_conventional(path, aggregator=0).total
    6
    """
    hops = _hops_from(topology.graph, aggregator)
    unreachable = topology.num_uavs - len(hops)
    if unreachable:
        raise RoutingError(
            f"{unreachable} UAV(s) cannot reach aggregator {aggregator}"
        )
    return MessageCount(intra_cluster=0, inter_cluster=2 * sum(hops.values()))


def count_intra(topology: Topology, layout: ClusterLayout) -> int:
    """
    Uploads of every training UAV to its head and the download of the model
    back, routed over the full communication graph.
    """
    total = 0
    for cluster, head in enumerate(layout.heads):
        hops = _hops_from(topology.graph, head)
        for member in layout.training_members(cluster):
            if member not in hops:
                raise RoutingError(
                    f"UAV {member} cannot reach its cluster head {head}"
                )
            total += 2 * hops[member]
    return total


def count_fca(ch_graph: nx.Graph, aggregator_ch: int) -> int:
    """
    Every other cluster head uploads to ``aggregator_ch`` over the cluster
    head graph and receives the global model back.
    """
    hops = _hops_from(ch_graph, aggregator_ch)
    if len(hops) != ch_graph.number_of_nodes():
        raise RoutingError(
            f"Cluster head graph is disconnected around cluster {aggregator_ch}"
        )
    return 2 * sum(hops.values())


def count_kha(ch_graph: nx.Graph, k: int) -> int:
    """
    Every cluster head floods its model to the heads within ``k`` hops along
    a BFS tree, one copy per reached head.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return sum(
        len(nx.single_source_shortest_path_length(ch_graph, c, cutoff=k)) - 1
        for c in ch_graph.nodes
    )


def count_round(
    scheme: Scheme,
    topology: Topology,
    layout: ClusterLayout,
    seed: int,
    k: Optional[int] = None,
) -> MessageCount:
    """
    Messages of one training round under ``scheme``.

    The aggregator (a UAV for conventional FL, a cluster head for FCA) is
    drawn from ``seed`` with :func:`pick_aggregator`, the same draw training
    uses.
    """
    scheme = Scheme(scheme)
    if scheme == Scheme.CONVENTIONAL:
        return count_conventional(
            topology, pick_aggregator(topology.num_uavs, seed)
        )
    intra = count_intra(topology, layout)
    if scheme == Scheme.FCA:
        aggregator = pick_aggregator(layout.num_clusters, seed)
        return MessageCount(intra, count_fca(layout.ch_graph, aggregator))
    if k is None:
        raise ValueError("k is required to count k-hop aggregation")
    return MessageCount(intra, count_kha(layout.ch_graph, k))
