# -*- coding: utf-8 -*-
import logging
import os
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import pandas as pd
from joblib import Parallel, delayed

from skyfed.aggregation import (
    RoundState,
    SchemeSpec,
    TrainingParams,
    initial_state,
    run_round,
)
from skyfed.clustering import (
    ClusterLayout,
    UnclusterableError,
    cluster_swarm,
    stretched_ch_links,
)
from skyfed.flcore import (
    Dataset,
    DatasetShard,
    load_mnist,
    partition_iid,
    partition_noniid,
    synthetic_blobs,
)
from skyfed.ledger import (
    LedgerError,
    LedgerState,
    dump_ledger,
    join_swarm,
    verify_chain,
)
from skyfed.metrics import CSV_COLUMNS, RoundMetrics
from skyfed.overhead import Scheme, count_round
from skyfed.seeding import derive_seed
from skyfed.topology import (
    InfeasibleDensityError,
    SwarmConfig,
    Topology,
    apply_drift,
    deploy_swarm,
)
from .config import DatasetKind, ExperimentConfig, PartitionKind


logger = logging.getLogger(__name__)

OVERHEAD_COLUMNS = [
    "uavs",
    "layout",
    "Q",
    "scheme",
    "k",
    "msg_intra",
    "msg_inter",
    "msg_total",
]


def load_datasets(config: ExperimentConfig) -> Tuple[Dataset, Dataset]:
    """
    Training and evaluation sets. Synthetic data is split 80/20 (by
    ``test_fraction``) before any partitioning; MNIST uses its test files.
    """
    if config.dataset == DatasetKind.MNIST:
        return load_mnist(config.data_dir)
    data = synthetic_blobs(
        num_samples=config.synthetic_samples,
        num_features=config.synthetic_features,
        num_classes=config.synthetic_classes,
        separation=config.separation,
        seed=derive_seed(config.seed, "data"),
    )
    return data.split(config.test_fraction, derive_seed(config.seed, "split"))


def register_swarm(num_uavs: int) -> LedgerState:
    """Register every UAV of the swarm, UAV ``u`` getting ledger id ``u``."""
    state = LedgerState()
    for uav in range(num_uavs):
        state, node = join_swarm(state, caller=f"operator-{uav}", node_id=f"uav-{uav}")
        if node != uav:
            raise LedgerError(f"UAV {uav} was registered under id {node}")
    if not verify_chain(state):
        raise LedgerError("Registration ledger failed verification")
    return state


def partition(
    config: ExperimentConfig, train: Dataset, uav_ids: Sequence[int], seed: int
) -> Dict[int, DatasetShard]:
    if config.partition == PartitionKind.NONIID:
        return partition_noniid(train, uav_ids, config.shards_per_uav, seed)
    return partition_iid(train, uav_ids, seed)


def deploy_and_cluster(
    config: ExperimentConfig, layout_id: int
) -> Tuple[SwarmConfig, Topology, ClusterLayout]:
    swarm = config.swarm_config(derive_seed(config.seed, layout_id, 0, "deploy"))
    topology = deploy_swarm(swarm)
    layout = cluster_swarm(
        topology,
        swarm,
        max_iters=config.kmeans_max_iters,
        restarts=config.kmeans_restarts,
    )
    return swarm, topology, layout


def run_layout(
    config: ExperimentConfig, layout_id: int, train: Dataset, test: Dataset
) -> List[RoundMetrics]:
    """
    Deploy, register, cluster and train one layout for ``config.rounds``
    rounds. A layout which cannot be deployed or clustered, or which leaves no
    UAV outside the cluster heads to train, is skipped with a warning and
    yields no rows.
    """
    try:
        swarm, home, layout = deploy_and_cluster(config, layout_id)
    except (InfeasibleDensityError, UnclusterableError) as e:
        logger.warning(f"Skipping layout {layout_id}: {e}")
        return []
    if not layout.training_uavs():
        logger.warning(
            f"Skipping layout {layout_id}: all {swarm.num_uavs} UAVs head their own "
            f"cluster, none left to train"
        )
        return []

    ledger = register_swarm(swarm.num_uavs)
    logger.info(f"Layout {layout_id}: {ledger.total_nodes} UAVs registered")
    if config.ledger_dir is not None:
        dump_ledger(ledger, Path(config.ledger_dir) / f"ledger-{layout_id}.jsonl")

    task = config.task_spec(train.features.shape[1], train.num_classes)
    shards = partition(
        config,
        train,
        layout.training_uavs(),
        derive_seed(config.seed, layout_id, 0, "partition"),
    )
    scheme = SchemeSpec(config.scheme, config.k)
    params = TrainingParams(
        lr=config.lr,
        batch_size=config.batch_size,
        data_weighted_fca=config.data_weighted_fca,
    )
    state: RoundState = initial_state(
        layout, task.init_model(derive_seed(config.seed, layout_id, 0, "init")), scheme
    )
    drift_seed = derive_seed(config.seed, layout_id, 0, "drift")

    rows = []
    for round_ in range(1, config.rounds + 1):
        topology = apply_drift(home, round_, drift_seed)
        stretched = stretched_ch_links(layout, topology)
        if stretched:
            logger.warning(
                f"Layout {layout_id} round {round_}: cluster head links {stretched} "
                f"out of range"
            )
        state, metrics = run_round(
            layout,
            topology,
            shards,
            state,
            params,
            derive_seed(config.seed, layout_id, round_, "round"),
            task,
            test,
            layout_id=layout_id,
        )
        logger.info(
            f"Layout {layout_id} round {round_}/{config.rounds}: "
            f"accuracy {metrics.acc_mean:.4f}, {metrics.msg_total} messages"
        )
        logger.debug(f"Layout {layout_id} round {round_}: {metrics.to_json()}")
        rows.append(metrics)
    return rows


def run_experiment(config: ExperimentConfig) -> List[RoundMetrics]:
    """
    Run every layout of the experiment and write one CSV row per layout and
    round to ``config.out``, in layout order.
    """
    train, test = load_datasets(config)
    logger.info(
        f"Running {config.layouts} layout(s) of {config.rounds} round(s), "
        f"scheme {config.scheme.value}, {len(train)} training samples"
    )
    if config.workers > 1:
        per_layout = Parallel(n_jobs=config.workers)(
            delayed(run_layout)(config, layout_id, train, test)
            for layout_id in range(config.layouts)
        )
    else:
        per_layout = [
            run_layout(config, layout_id, train, test)
            for layout_id in range(config.layouts)
        ]
    metrics = [row for rows in per_layout for row in rows]
    write_metrics_csv(metrics, config.out)
    return metrics


def write_metrics_csv(metrics: Iterable[RoundMetrics], path: Union[os.PathLike, str]):
    frame = pd.DataFrame([m.to_row() for m in metrics], columns=CSV_COLUMNS)
    frame["k"] = frame["k"].astype("Int64")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format="%.6f", encoding="utf-8")
    logger.info(f"Wrote {len(frame)} rows to {path}")


def overhead_sweep(
    uav_counts: Sequence[int],
    layouts: int,
    ks: Sequence[int] = (1,),
    seed: int = 0,
    base: Optional[ExperimentConfig] = None,
) -> pd.DataFrame:
    """
    Messages of one training round for conventional FL, FCA and k-hop
    aggregation (for every ``k`` in ``ks``) over ``layouts`` random layouts
    per swarm size. No training takes place.

    Layouts that cannot be deployed or clustered are skipped.
    """
    base = base or ExperimentConfig()
    rows = []
    for uavs in uav_counts:
        config = base.copy(update={"num_uavs": uavs, "seed": seed})
        for layout_id in range(layouts):
            try:
                _, topology, layout = deploy_and_cluster(config, layout_id)
            except (InfeasibleDensityError, UnclusterableError) as e:
                logger.warning(f"Skipping {uavs} UAV layout {layout_id}: {e}")
                continue
            count_seed = derive_seed(derive_seed(seed, layout_id, 1, "round"), "aggregator")
            schemes = [(Scheme.CONVENTIONAL, None), (Scheme.FCA, None)]
            schemes += [(Scheme.KHA, k) for k in ks]
            for scheme, k in schemes:
                messages = count_round(scheme, topology, layout, count_seed, k=k)
                rows.append(
                    {
                        "uavs": uavs,
                        "layout": layout_id,
                        "Q": layout.num_clusters,
                        "scheme": scheme.value,
                        "k": k,
                        "msg_intra": messages.intra_cluster,
                        "msg_inter": messages.inter_cluster,
                        "msg_total": messages.total,
                    }
                )
        logger.info(f"Counted messages for {uavs} UAVs")
    frame = pd.DataFrame(rows, columns=OVERHEAD_COLUMNS)
    frame["k"] = frame["k"].astype("Int64")
    return frame
