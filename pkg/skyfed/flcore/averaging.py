# -*- coding: utf-8 -*-
from typing import Dict, Sequence

import numpy as np

from .exceptions import AggregationWeightError, DimensionMismatchError
from .task import ModelVector

WEIGHT_TOLERANCE = 1e-12


def check_weights(weights: Sequence[float], expected: int):
    """
    Raise unless ``weights`` has ``expected`` entries in [0, 1] summing to one.
    """
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (expected,):
        raise AggregationWeightError(
            f"Expected {expected} aggregation weights, got {weights.shape}"
        )
    if np.any(weights < 0) or np.any(weights > 1):
        raise AggregationWeightError("Aggregation weights must lie in [0, 1]")
    if abs(float(np.sum(weights)) - 1.0) > WEIGHT_TOLERANCE:
        raise AggregationWeightError(
            f"Aggregation weights sum to {np.sum(weights)!r}, not 1"
        )


def size_weights(sizes: Dict[int, int]) -> Dict[int, float]:
    """
    Weights proportional to sample counts, normalised over the given group.

    Examples
    --------
    >>> size_weights({4: 10, 7: 20, 9: 30})
    {4: 0.16666666666666666, 7: 0.3333333333333333, 9: 0.5}
    """
    total = sum(sizes.values())
    if total <= 0:
        raise AggregationWeightError("Cannot weight a group without samples")
    return {owner: size / total for owner, size in sizes.items()}


def fedavg(models: Sequence[ModelVector], weights: Sequence[float]) -> ModelVector:
    """
    Coordinate-wise weighted average of ``models``.

    The sum runs in the order the models are given; callers pass them in
    ascending UAV id so results are reproducible.

    Examples
    --------
    >>> fedavg([np.zeros(3), np.ones(3)], [0.75, 0.25]).tolist()
    [0.25, 0.25, 0.25]
    """
    if not models:
        raise DimensionMismatchError("Cannot average an empty list of models")
    check_weights(weights, len(models))
    dimension = models[0].shape
    result = np.zeros(dimension, dtype=np.float64)
    for model, weight in zip(models, weights):
        if model.shape != dimension:
            raise DimensionMismatchError(
                f"Model of shape {model.shape} cannot be averaged with {dimension}"
            )
        result += weight * model
    return result


def uniform_average(models: Sequence[ModelVector]) -> ModelVector:
    """Unweighted mean, summed in the given order."""
    if not models:
        raise DimensionMismatchError("Cannot average an empty list of models")
    result = np.zeros(models[0].shape, dtype=np.float64)
    for model in models:
        if model.shape != result.shape:
            raise DimensionMismatchError(
                f"Model of shape {model.shape} cannot be averaged with {result.shape}"
            )
        result += model
    return result / len(models)
