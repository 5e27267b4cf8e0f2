# -*- coding: utf-8 -*-
"""
Intra-cluster and inter-cluster aggregation.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from skyfed.clustering import ClusterLayout
from skyfed.flcore import ModelVector, fedavg, size_weights, uniform_average
from skyfed.overhead import Scheme, pick_aggregator


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SchemeSpec:
    """
    Aggregation scheme of an experiment. ``k`` is the hop radius and is
    required for, and only for, k-hop aggregation.
    """

    kind: Scheme
    k: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Scheme(self.kind))
        if self.kind == Scheme.KHA and (self.k is None or self.k < 1):
            raise ValueError(f"k-hop aggregation needs k >= 1, got {self.k}")
        if self.kind != Scheme.KHA and self.k is not None:
            raise ValueError(f"k is only valid for k-hop aggregation, not {self.kind}")

    @property
    def label(self) -> str:
        return f"{self.k}ha" if self.kind == Scheme.KHA else self.kind.value


def intra_cluster_aggregate(
    layout: ClusterLayout,
    uav_models: Dict[int, ModelVector],
    shard_sizes: Dict[int, int],
    previous: Sequence[ModelVector],
) -> Tuple[Tuple[ModelVector, ...], List[int]]:
    """
    FedAvg of every cluster's training UAVs, weighted by their share of the
    cluster's samples. The head holds no data and is left out.

    A cluster without training UAVs keeps its model from ``previous``.

    Returns
    -------
    Tuple[Tuple[ModelVector, ...], List[int]]
        Cluster models indexed by cluster, and the clusters which carried
        their previous model over.
    """
    cluster_models, carried = [], []
    for cluster in range(layout.num_clusters):
        members = layout.training_members(cluster)
        if not members:
            logger.debug(f"Cluster {cluster} has no training UAVs, carrying model")
            cluster_models.append(previous[cluster])
            carried.append(cluster)
            continue
        weights = size_weights({u: shard_sizes[u] for u in members})
        cluster_models.append(
            fedavg([uav_models[u] for u in members], [weights[u] for u in members])
        )
    return tuple(cluster_models), carried


def fca(
    cluster_models: Sequence[ModelVector],
    rng_seed: int,
    weights: Optional[Sequence[float]] = None,
) -> Tuple[ModelVector, int]:
    """
    Fully centralised aggregation: one randomly chosen cluster head averages
    every cluster model.

    Clusters count equally unless ``weights`` is given.

    Returns
    -------
    Tuple[ModelVector, int]
        Global model and the cluster whose head aggregated it.
    """
    aggregator = pick_aggregator(len(cluster_models), rng_seed)
    if weights is None:
        return uniform_average(cluster_models), aggregator
    return fedavg(cluster_models, weights), aggregator


def kha(
    ch_graph: nx.Graph, cluster_models: Sequence[ModelVector], k: int
) -> Tuple[ModelVector, ...]:
    """
    k-hop aggregation: every cluster head averages the models of all heads at
    most ``k`` hops away on the cluster head graph, its own included.

    Examples
    --------
    >>> import numpy as np
    >>> path = nx.path_graph(3)
    >>> models = [np.array([0.0]), np.array([3.0]), np.array([6.0])]
    >>> [float(m[0]) for m in kha(path, models, k=1)]
    [1.5, 3.0, 4.5]
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    distributed = []
    for cluster in range(len(cluster_models)):
        neighbourhood = khop_neighbourhood(ch_graph, cluster, k)
        distributed.append(uniform_average([cluster_models[q] for q in neighbourhood]))
    return tuple(distributed)


def khop_neighbourhood(ch_graph: nx.Graph, cluster: int, k: int) -> List[int]:
    """Clusters within ``k`` hops of ``cluster``, itself included."""
    return sorted(nx.single_source_shortest_path_length(ch_graph, cluster, cutoff=k))
