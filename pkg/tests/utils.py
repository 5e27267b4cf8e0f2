import os
from contextlib import contextmanager
from typing import Dict, Sequence

import numpy as np

from skyfed.clustering import ClusterLayout, build_ch_graph, select_heads
from skyfed.flcore import DatasetShard


@contextmanager
def temp_env_vars(**kwargs):
    """
    Temporarily set the process environment variables
    """
    _env = os.environ.copy()

    for key in kwargs:
        os.environ[key] = kwargs[key]

    yield

    os.environ.clear()
    os.environ.update(_env)


def make_layout(
    positions: np.ndarray, assignment: Sequence[int], sigma: float = 140.0
) -> ClusterLayout:
    """Layout with a fixed assignment, bypassing k-means"""
    positions = np.asarray(positions, dtype=float)
    assignment = np.asarray(assignment)
    num_clusters = int(assignment.max()) + 1
    centroids = np.stack(
        [positions[assignment == q].mean(axis=0) for q in range(num_clusters)]
    )
    heads = select_heads(positions, assignment, centroids)
    return ClusterLayout(
        assignment=assignment,
        centroids=centroids,
        heads=heads,
        ch_graph=build_ch_graph(heads, positions, sigma),
        sigma=sigma,
    )


def random_shards(
    uav_ids: Sequence[int],
    sizes: Sequence[int],
    input_dim: int,
    num_classes: int,
    seed: int = 0,
) -> Dict[int, DatasetShard]:
    rng = np.random.default_rng(seed)
    return {
        u: DatasetShard(
            u,
            rng.normal(size=(size, input_dim)),
            rng.integers(0, num_classes, size=size),
        )
        for u, size in zip(uav_ids, sizes)
    }
