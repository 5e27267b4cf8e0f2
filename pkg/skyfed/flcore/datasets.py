# -*- coding: utf-8 -*-
"""
Datasets the swarm trains on: MNIST from IDX files and Gaussian blobs.
"""
import gzip
import logging
import os
import struct
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np
from sklearn.datasets import make_blobs

from .data import Dataset
from .exceptions import DatasetError


logger = logging.getLogger(__name__)

IDX_IMAGES_MAGIC = 0x00000803
IDX_LABELS_MAGIC = 0x00000801

MNIST_FILES = {
    "train": ("train-images-idx3-ubyte", "train-labels-idx1-ubyte"),
    "test": ("t10k-images-idx3-ubyte", "t10k-labels-idx1-ubyte"),
}
MNIST_CLASSES = 10


def _open(path: Path):
    if path.suffix == ".gz":
        return gzip.open(path, "rb")
    return path.open("rb")


def _read_be32(f, path: Path, count: int) -> Tuple[int, ...]:
    data = f.read(4 * count)
    if len(data) != 4 * count:
        raise DatasetError(f"{path}: truncated IDX header")
    return struct.unpack(f">{count}I", data)


def read_idx_images(path: Union[os.PathLike, str]) -> np.ndarray:
    """
    Images of an IDX file as ``(n, rows * cols)`` float64 scaled to [0, 1].
    """
    path = Path(path)
    with _open(path) as f:
        (magic,) = _read_be32(f, path, 1)
        if magic != IDX_IMAGES_MAGIC:
            raise DatasetError(f"{path}: magic {magic:#010x} is not an image file")
        count, rows, cols = _read_be32(f, path, 3)
        pixels = np.frombuffer(f.read(), dtype=np.uint8)
    if pixels.size != count * rows * cols:
        raise DatasetError(
            f"{path}: expected {count * rows * cols} pixels, found {pixels.size}"
        )
    return pixels.reshape(count, rows * cols).astype(np.float64) / 255.0


def read_idx_labels(path: Union[os.PathLike, str]) -> np.ndarray:
    path = Path(path)
    with _open(path) as f:
        (magic,) = _read_be32(f, path, 1)
        if magic != IDX_LABELS_MAGIC:
            raise DatasetError(f"{path}: magic {magic:#010x} is not a label file")
        (count,) = _read_be32(f, path, 1)
        labels = np.frombuffer(f.read(), dtype=np.uint8)
    if labels.size != count:
        raise DatasetError(f"{path}: expected {count} labels, found {labels.size}")
    return labels.astype(np.int64)


def _find(data_dir: Path, name: str) -> Path:
    for candidate in (data_dir / name, data_dir / f"{name}.gz"):
        if candidate.exists():
            return candidate
    raise DatasetError(f"Could not find {name}[.gz] in {data_dir}")


def load_mnist(
    data_dir: Optional[Union[os.PathLike, str]] = None
) -> Tuple[Dataset, Dataset]:
    """
    MNIST training and test sets from ``data_dir``, falling back to the
    ``SKYFED_DATA_DIR`` environment variable.
    """
    if data_dir is None:
        data_dir = os.environ.get("SKYFED_DATA_DIR")
    if not data_dir:
        raise DatasetError("No MNIST directory given and SKYFED_DATA_DIR is not set")
    data_dir = Path(data_dir)
    loaded = []
    for part in ("train", "test"):
        images_name, labels_name = MNIST_FILES[part]
        images = read_idx_images(_find(data_dir, images_name))
        labels = read_idx_labels(_find(data_dir, labels_name))
        if len(images) != len(labels):
            raise DatasetError(
                f"MNIST {part}: {len(images)} images but {len(labels)} labels"
            )
        logger.info(f"Loaded {len(labels)} MNIST {part} samples from {data_dir}")
        loaded.append(Dataset(images, labels, MNIST_CLASSES))
    return loaded[0], loaded[1]


def mnist_available(data_dir: Optional[Union[os.PathLike, str]] = None) -> bool:
    try:
        directory = Path(data_dir or os.environ.get("SKYFED_DATA_DIR") or "")
        for names in MNIST_FILES.values():
            for name in names:
                _find(directory, name)
    except DatasetError:
        return False
    return True


def synthetic_blobs(
    num_samples: int,
    num_features: int = 20,
    num_classes: int = 3,
    separation: float = 3.0,
    cluster_std: float = 1.0,
    seed: int = 0,
) -> Dataset:
    """
    Gaussian blobs, one per class, with class means ``separation *
    cluster_std`` apart from each other.

    Examples
    --------
    >>> data = synthetic_blobs(90, num_features=5, num_classes=3, seed=1)
    >>> data.features.shape, np.bincount(data.labels).tolist()
    ((90, 5), [30, 30, 30])
    """
    if num_classes > num_features:
        raise DatasetError(
            f"Cannot place {num_classes} equidistant means in {num_features} dimensions"
        )
    # scaled unit vectors are pairwise separation * cluster_std apart
    centers = np.eye(num_classes, num_features) * separation * cluster_std / np.sqrt(2)
    features, labels = make_blobs(
        n_samples=num_samples,
        n_features=num_features,
        centers=centers,
        cluster_std=cluster_std,
        random_state=seed % 2 ** 32,
    )
    return Dataset(features.astype(np.float64), labels.astype(np.int64), num_classes)
