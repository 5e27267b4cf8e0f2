# -*- coding: utf-8 -*-
"""
One training round of the clustered swarm:

1. cluster heads hand their current model to their training UAVs,
2. every training UAV runs one epoch of local SGD,
3. heads average their members' models,
4. heads exchange cluster models (FCA or k-hop), or, for conventional FL,
   one aggregator UAV averages every local model,
5. the resulting models are evaluated and the messages counted.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from skyfed.clustering import ClusterLayout
from skyfed.flcore import (
    Dataset,
    DatasetShard,
    FLCoreError,
    ModelVector,
    TaskSpec,
    cross_entropy,
    fedavg,
    forward,
    local_sgd,
    shard_sizes,
    size_weights,
)
from skyfed.metrics import RoundMetrics
from skyfed.overhead import MessageCount, RoutingError, Scheme, count_round
from skyfed.overhead import pick_aggregator
from skyfed.seeding import derive_seed
from skyfed.topology import Topology
from .schemes import SchemeSpec, fca, intra_cluster_aggregate, kha


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainingParams:
    lr: float
    batch_size: int = 10
    data_weighted_fca: bool = False


@dataclass(frozen=True, eq=False)
class RoundState:
    """
    Models at the end of round ``round``.

    ``distributed`` holds, per cluster, the model its head hands out at the
    start of the next round. ``cluster_models`` are the intra-cluster
    averages the round produced and ``uav_models`` the local models of the
    training UAVs.
    """

    round: int
    scheme: SchemeSpec
    distributed: Tuple[ModelVector, ...]
    cluster_models: Tuple[ModelVector, ...] = ()
    uav_models: Dict[int, ModelVector] = field(default_factory=dict)


def initial_state(
    layout: ClusterLayout, model: ModelVector, scheme: SchemeSpec
) -> RoundState:
    """Round 0: every head distributes ``model``."""
    return RoundState(
        round=0,
        scheme=scheme,
        distributed=tuple(model for _ in range(layout.num_clusters)),
    )


def evaluate(task: TaskSpec, model: ModelVector, eval_set: Dataset) -> Tuple[float, float]:
    """
    Top-1 accuracy and mean cross-entropy of ``model`` on ``eval_set``.

    Ties between classes go to the lowest class index.
    """
    if len(eval_set) == 0:
        raise FLCoreError("Cannot evaluate on an empty dataset")
    logits, _ = forward(task, model, eval_set.features)
    accuracy = float(np.mean(np.argmax(logits, axis=1) == eval_set.labels))
    return accuracy, cross_entropy(logits, eval_set.labels)


def run_round(
    layout: ClusterLayout,
    topology: Topology,
    shards: Dict[int, DatasetShard],
    state: RoundState,
    params: TrainingParams,
    seed: int,
    task: TaskSpec,
    eval_set: Dataset,
    layout_id: int = 0,
) -> Tuple[RoundState, RoundMetrics]:
    """
    Train and aggregate one round under ``state.scheme``.

    Parameters
    ----------
    layout: ClusterLayout
    topology: Topology
        Swarm positions of this round, used for message routing.
    shards: Dict[int, DatasetShard]
        Local data of every training UAV.
    state: RoundState
        Output of the previous round, or :func:`initial_state`.
    params: TrainingParams
    seed: int
        Round seed; SGD shuffles and aggregator draws derive from it.
    task: TaskSpec
    eval_set: Dataset
    layout_id: int
        Layout number recorded in the metrics.

    Returns
    -------
    Tuple[RoundState, RoundMetrics]
    """
    scheme = state.scheme
    sizes = shard_sizes(shards)

    uav_models: Dict[int, ModelVector] = {}
    for cluster in range(layout.num_clusters):
        start = state.distributed[cluster]
        for uav in layout.training_members(cluster):
            uav_models[uav] = local_sgd(
                task,
                start,
                shards[uav],
                params.lr,
                params.batch_size,
                derive_seed(seed, "sgd", uav),
            )

    aggregator_seed = derive_seed(seed, "aggregator")
    cluster_models, carried = intra_cluster_aggregate(
        layout, uav_models, sizes, state.distributed
    )
    if carried:
        logger.warning(f"Clusters {carried} have no training UAVs this round")

    if scheme.kind == Scheme.CONVENTIONAL:
        trainers = sorted(uav_models)
        weights = size_weights({u: sizes[u] for u in trainers})
        global_model = fedavg(
            [uav_models[u] for u in trainers], [weights[u] for u in trainers]
        )
        aggregator = pick_aggregator(topology.num_uavs, aggregator_seed)
        logger.debug(f"Round {state.round + 1}: UAV {aggregator} aggregated")
        distributed = tuple(global_model for _ in range(layout.num_clusters))
    elif scheme.kind == Scheme.FCA:
        cluster_weights = None
        if params.data_weighted_fca:
            cluster_weights = _cluster_data_weights(layout, sizes)
        global_model, aggregator = fca(cluster_models, aggregator_seed, cluster_weights)
        logger.debug(f"Round {state.round + 1}: head of cluster {aggregator} aggregated")
        distributed = tuple(global_model for _ in range(layout.num_clusters))
    else:
        distributed = kha(layout.ch_graph, cluster_models, scheme.k)

    new_state = RoundState(
        round=state.round + 1,
        scheme=scheme,
        distributed=distributed,
        cluster_models=cluster_models,
        uav_models=uav_models,
    )
    messages = _count_messages(scheme, topology, layout, aggregator_seed)
    return new_state, _round_metrics(
        new_state, layout, task, eval_set, messages, carried, layout_id
    )


def _cluster_data_weights(layout: ClusterLayout, sizes: Dict[int, int]):
    totals = [
        sum(sizes[u] for u in layout.training_members(cluster))
        for cluster in range(layout.num_clusters)
    ]
    return [total / sum(totals) for total in totals]


def _count_messages(
    scheme: SchemeSpec, topology: Topology, layout: ClusterLayout, seed: int
) -> MessageCount:
    try:
        return count_round(scheme.kind, topology, layout, seed, k=scheme.k)
    except RoutingError as e:
        logger.warning(f"{e}; counting messages on the deployment positions")
        return count_round(scheme.kind, topology.at_home(), layout, seed, k=scheme.k)


def _round_metrics(
    state: RoundState,
    layout: ClusterLayout,
    task: TaskSpec,
    eval_set: Dataset,
    messages: MessageCount,
    carried,
    layout_id: int,
) -> RoundMetrics:
    scores: Dict[int, Tuple[float, float]] = {}
    per_cluster = []
    for model in state.distributed:
        # FCA and conventional rounds hand the same object to every head
        if id(model) not in scores:
            scores[id(model)] = evaluate(task, model, eval_set)
        per_cluster.append(scores[id(model)])
    accuracy = np.array([acc for acc, _ in per_cluster])
    loss = np.array([value for _, value in per_cluster])
    return RoundMetrics(
        layout=layout_id,
        round=state.round,
        scheme=state.scheme.kind.value,
        k=state.scheme.k,
        num_clusters=layout.num_clusters,
        acc_mean=float(accuracy.mean()),
        loss_mean=float(loss.mean()),
        acc_min=float(accuracy.min()),
        acc_max=float(accuracy.max()),
        msg_intra=messages.intra_cluster,
        msg_inter=messages.inter_cluster,
        carried_clusters=list(carried),
        ch_accuracy={q: float(acc) for q, acc in enumerate(accuracy)},
    )
