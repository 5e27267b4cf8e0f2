# -*- coding: utf-8 -*-
"""
Cross-entropy objectives and their analytic gradients.
"""
from typing import Sequence, Tuple

import numpy as np
from scipy.special import logsumexp, softmax

from .averaging import check_weights
from .data import DatasetShard
from .exceptions import EmptyShardError, DimensionMismatchError
from .task import ModelKind, ModelVector, TaskSpec


def forward(
    task: TaskSpec, model: ModelVector, features: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Class logits for ``features`` and the hidden activations (the inputs
    themselves for logistic regression).
    """
    blocks = task.unpack(model)
    features = np.asarray(features, dtype=np.float64)
    if features.ndim != 2 or features.shape[1] != task.input_dim:
        raise DimensionMismatchError(
            f"Expected features with {task.input_dim} columns, got {features.shape}"
        )
    if task.kind == ModelKind.LOGISTIC:
        return features @ blocks["W"] + blocks["b"], features
    hidden = np.tanh(features @ blocks["W1"] + blocks["b1"])
    return hidden @ blocks["W2"] + blocks["b2"], hidden


def cross_entropy(logits: np.ndarray, labels: np.ndarray) -> float:
    """Mean negative log-likelihood of ``labels`` under softmax(``logits``)."""
    picked = logits[np.arange(len(labels)), labels]
    return float(np.mean(logsumexp(logits, axis=1) - picked))


def local_objective(task: TaskSpec, model: ModelVector, shard: DatasetShard) -> float:
    """
    Mean cross-entropy loss of ``model`` over the samples of one UAV.

    Examples
    --------
    >>> task = TaskSpec(kind="logistic", input_dim=2, num_classes=4)
    >>> shard = DatasetShard(0, np.ones((3, 2)), np.array([0, 1, 3]))
    >>> bool(np.isclose(local_objective(task, task.init_model(), shard), np.log(4)))
    True
    """
    if len(shard) == 0:
        raise EmptyShardError(f"Shard of UAV {shard.owner} is empty")
    logits, _ = forward(task, model, shard.features)
    return cross_entropy(logits, shard.labels)


def global_objective(
    task: TaskSpec,
    model: ModelVector,
    shards: Sequence[DatasetShard],
    weights: Sequence[float],
) -> float:
    """Weighted sum of the local objectives; ``weights`` must sum to one."""
    check_weights(weights, len(shards))
    total = 0.0
    for shard, weight in zip(shards, weights):
        total += weight * local_objective(task, model, shard)
    return total


def gradient(
    task: TaskSpec, model: ModelVector, features: np.ndarray, labels: np.ndarray
) -> ModelVector:
    """
    Gradient of the mean cross-entropy over the batch ``(features, labels)``.
    """
    if len(labels) == 0:
        raise EmptyShardError("Cannot take the gradient over an empty batch")
    features = np.asarray(features, dtype=np.float64)
    logits, hidden = forward(task, model, features)
    residual = softmax(logits, axis=1)
    residual[np.arange(len(labels)), labels] -= 1.0
    residual /= len(labels)
    if task.kind == ModelKind.LOGISTIC:
        return task.pack({"W": features.T @ residual, "b": residual.sum(axis=0)})
    blocks = task.unpack(model)
    back = (residual @ blocks["W2"].T) * (1.0 - hidden ** 2)
    return task.pack(
        {
            "W1": features.T @ back,
            "b1": back.sum(axis=0),
            "W2": hidden.T @ residual,
            "b2": residual.sum(axis=0),
        }
    )


def predict(task: TaskSpec, model: ModelVector, features: np.ndarray) -> np.ndarray:
    """Most likely class per sample, lowest class index on ties."""
    logits, _ = forward(task, model, features)
    return np.argmax(logits, axis=1)
