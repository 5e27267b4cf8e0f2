# -*- coding: utf-8 -*-
import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np
from sklearn.model_selection import train_test_split

from .exceptions import DatasetError, EmptyShardError


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Labelled samples; ``features`` is ``(n, d)`` float64, ``labels`` is
    ``(n,)`` with values in ``0..num_classes-1``.
    """

    features: np.ndarray
    labels: np.ndarray
    num_classes: int

    def __post_init__(self):
        if self.features.ndim != 2 or len(self.features) != len(self.labels):
            raise DatasetError(
                f"Features {self.features.shape} do not match labels "
                f"{self.labels.shape}"
            )
        if len(self.labels) and (
            self.labels.min() < 0 or self.labels.max() >= self.num_classes
        ):
            raise DatasetError(f"Labels must lie in 0..{self.num_classes - 1}")

    def __len__(self) -> int:
        return len(self.labels)

    def subset(self, indices: np.ndarray) -> "Dataset":
        return Dataset(self.features[indices], self.labels[indices], self.num_classes)

    def split(self, test_fraction: float, seed: int) -> Tuple["Dataset", "Dataset"]:
        """Held-out split, stratified by label."""
        train_idx, test_idx = train_test_split(
            np.arange(len(self)),
            test_size=test_fraction,
            random_state=seed % 2 ** 32,
            stratify=self.labels,
        )
        return self.subset(np.sort(train_idx)), self.subset(np.sort(test_idx))


@dataclass(frozen=True, eq=False)
class DatasetShard:
    owner: int
    features: np.ndarray
    labels: np.ndarray

    def __len__(self) -> int:
        return len(self.labels)


def shard_of(dataset: Dataset, owner: int, indices: np.ndarray) -> DatasetShard:
    if len(indices) == 0:
        raise EmptyShardError(f"UAV {owner} received no samples")
    return DatasetShard(
        owner=owner,
        features=dataset.features[indices],
        labels=dataset.labels[indices],
    )


def partition_iid(
    dataset: Dataset, uav_ids: Sequence[int], rng_seed: int
) -> Dict[int, DatasetShard]:
    """
    Shuffle the samples and split them in near-equal contiguous parts, one per
    UAV in ``uav_ids`` order. Sizes differ by at most one, the first UAVs
    getting the larger shards.

    Examples
    --------
    >>> data = Dataset(np.zeros((101, 2)), np.zeros(101, dtype=int), 2)
    >>> shards = partition_iid(data, list(range(10)), rng_seed=0)
    >>> [len(shards[u]) for u in range(10)]
    [11, 10, 10, 10, 10, 10, 10, 10, 10, 10]
    """
    if len(dataset) < len(uav_ids):
        raise DatasetError(
            f"{len(dataset)} samples cannot be shared among {len(uav_ids)} UAVs"
        )
    order = np.random.default_rng(rng_seed).permutation(len(dataset))
    parts = np.array_split(order, len(uav_ids))
    return {int(u): shard_of(dataset, int(u), part) for u, part in zip(uav_ids, parts)}


def partition_noniid(
    dataset: Dataset,
    uav_ids: Sequence[int],
    shards_per_uav: int,
    rng_seed: int,
) -> Dict[int, DatasetShard]:
    """
    Label-skewed partition: sort the samples by label, cut them into
    ``len(uav_ids) * shards_per_uav`` contiguous label shards and deal
    ``shards_per_uav`` of them to every UAV following a seeded permutation.

    When the label shard boundaries line up with label boundaries, every UAV
    holds at most ``shards_per_uav`` distinct labels.
    """
    num_shards = len(uav_ids) * shards_per_uav
    if shards_per_uav < 1 or len(dataset) < num_shards:
        raise DatasetError(
            f"{len(dataset)} samples are too few for {num_shards} label shards"
        )
    by_label = np.argsort(dataset.labels, kind="stable")
    label_shards = np.array_split(by_label, num_shards)
    deal = np.random.default_rng(rng_seed).permutation(num_shards)
    shards = {}
    for position, uav in enumerate(uav_ids):
        dealt = deal[position * shards_per_uav : (position + 1) * shards_per_uav]
        indices = np.concatenate([label_shards[s] for s in dealt])
        shards[int(uav)] = shard_of(dataset, int(uav), indices)
    logger.debug(f"Dealt {num_shards} label shards to {len(uav_ids)} UAVs")
    return shards


def shard_sizes(shards: Dict[int, DatasetShard]) -> Dict[int, int]:
    return {owner: len(shard) for owner, shard in shards.items()}


def pooled(shards: List[DatasetShard], num_classes: int) -> Dataset:
    return Dataset(
        np.concatenate([s.features for s in shards]),
        np.concatenate([s.labels for s in shards]),
        num_classes,
    )
