# -*- coding: utf-8 -*-
import logging

import numpy as np

from .data import Dataset, DatasetShard
from .exceptions import FLCoreError, NonFiniteModelError
from .objectives import gradient
from .task import ModelVector, TaskSpec, check_model


logger = logging.getLogger(__name__)


def local_sgd(
    task: TaskSpec,
    model: ModelVector,
    shard: DatasetShard,
    lr: float,
    batch_size: int,
    rng_seed: int,
) -> ModelVector:
    """
    One epoch of mini-batch SGD over ``shard``.

    The samples are visited in a permutation drawn from ``rng_seed``; the last
    batch may be shorter than ``batch_size``.

    Parameters
    ----------
    task: TaskSpec
    model: ModelVector
        Starting weights, left untouched.
    shard: DatasetShard
    lr: float
        Learning rate, ``0`` returns the starting weights.
    batch_size: int
    rng_seed: int

    Returns
    -------
    ModelVector
        Updated weights.
    """
    if lr < 0:
        raise FLCoreError(f"Learning rate must not be negative, got {lr}")
    if batch_size < 1:
        raise FLCoreError(f"Batch size must be at least 1, got {batch_size}")
    check_model(task, model)
    weights = model.copy()
    order = np.random.default_rng(rng_seed).permutation(len(shard))
    for start in range(0, len(order), batch_size):
        batch = order[start : start + batch_size]
        weights = weights - lr * gradient(
            task, weights, shard.features[batch], shard.labels[batch]
        )
    if not np.all(np.isfinite(weights)):
        raise NonFiniteModelError(
            f"SGD on UAV {shard.owner} diverged, lower the learning rate ({lr})"
        )
    return weights


def centralized_sgd(
    task: TaskSpec,
    model: ModelVector,
    dataset: Dataset,
    lr: float,
    batch_size: int,
    epochs: int,
    rng_seed: int,
) -> ModelVector:
    """
    Mini-batch SGD on pooled data, ``epochs`` passes; the reference a swarm
    trained for the same number of rounds is compared with.
    """
    pooled = DatasetShard(owner=-1, features=dataset.features, labels=dataset.labels)
    rng = np.random.default_rng(rng_seed)
    for epoch in range(epochs):
        seed = int(rng.integers(0, 2 ** 62))
        model = local_sgd(task, model, pooled, lr, batch_size, seed)
        logger.debug(f"Centralised epoch {epoch + 1}/{epochs} done")
    return model
