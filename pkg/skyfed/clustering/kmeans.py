# -*- coding: utf-8 -*-
import logging
from typing import Tuple

import numpy as np
from sklearn.cluster import kmeans_plusplus

from .exceptions import ClusteringError


logger = logging.getLogger(__name__)

DEFAULT_MAX_ITERS = 100


def kmeans(
    positions: np.ndarray,
    num_clusters: int,
    seed: int,
    max_iters: int = DEFAULT_MAX_ITERS,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Lloyd's algorithm with k-means++ seeding.

    Iterates until the assignment no longer changes or ``max_iters`` is
    reached. Every returned cluster has at least one member: a cluster left
    empty during an iteration takes over the point furthest from its own
    centroid.

    Parameters
    ----------
    positions: np.ndarray
        ``(U, 2)`` points.
    num_clusters: int
        Number of clusters, ``1 <= num_clusters <= U``.
    seed: int
        Seed of the k-means++ initialisation.
    max_iters: int
        Upper bound on Lloyd iterations.

    Returns
    -------
    Tuple[np.ndarray, np.ndarray]
        Cluster index per point and the ``(num_clusters, 2)`` centroids.

    Examples
    --------
    >>> points = np.array([[0.0, 0.0], [1.0, 0.0], [10.0, 0.0], [11.0, 0.0]])
    >>> assignment, centroids = kmeans(points, 1, seed=0)
    >>> assignment.tolist(), centroids.tolist()
    ([0, 0, 0, 0], [[5.5, 0.0]])
    """
    points = np.asarray(positions, dtype=np.float64)
    if not 1 <= num_clusters <= len(points):
        raise ClusteringError(
            f"Number of clusters must be within 1..{len(points)}, got {num_clusters}"
        )
    centroids, _ = kmeans_plusplus(
        points, n_clusters=num_clusters, random_state=seed % 2 ** 32
    )
    centroids = np.array(centroids, dtype=np.float64)

    assignment = None
    for iteration in range(max_iters):
        updated = _repair_empty_clusters(
            points, _nearest_centroid(points, centroids), centroids, num_clusters
        )
        centroids = _centroids(points, updated, num_clusters)
        if assignment is not None and np.array_equal(updated, assignment):
            logger.debug(f"k-means with Q={num_clusters} stable after {iteration}")
            break
        assignment = updated
    return assignment, centroids


def _nearest_centroid(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    diff = points[:, np.newaxis, :] - centroids[np.newaxis, :, :]
    return np.argmin(np.sum(diff ** 2, axis=-1), axis=1)


def _centroids(points: np.ndarray, assignment: np.ndarray, num_clusters: int):
    counts = np.bincount(assignment, minlength=num_clusters)
    sums = np.stack(
        [
            np.bincount(assignment, weights=points[:, axis], minlength=num_clusters)
            for axis in range(points.shape[1])
        ],
        axis=1,
    )
    return sums / counts[:, np.newaxis]


def _repair_empty_clusters(
    points: np.ndarray,
    assignment: np.ndarray,
    centroids: np.ndarray,
    num_clusters: int,
) -> np.ndarray:
    assignment = assignment.copy()
    if np.bincount(assignment, minlength=num_clusters).min() > 0:
        return assignment
    for cluster in range(num_clusters):
        if np.any(assignment == cluster):
            continue
        sizes = np.bincount(assignment, minlength=num_clusters)
        distances = np.sum((points - centroids[assignment]) ** 2, axis=1)
        # only points whose cluster can spare them
        distances[sizes[assignment] < 2] = -1.0
        donor = int(np.argmax(distances))
        logger.debug(f"Cluster {cluster} empty, taking over point {donor}")
        assignment[donor] = cluster
    return assignment
