# -*- coding: utf-8 -*-
import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import networkx as nx
import numpy as np

from .config import SwarmConfig
from .exceptions import TopologyError, InfeasibleDensityError


logger = logging.getLogger(__name__)

MAX_DEPLOY_ATTEMPTS = 1000


def adjacency_matrix(positions: np.ndarray, link_range: float) -> np.ndarray:
    """
    Symmetric, irreflexive boolean matrix linking every pair of points whose
    Euclidean distance is at most ``link_range``. A pair at exactly
    ``link_range`` is linked.

    Examples
    --------
    >>> adjacency_matrix(np.array([[0.0, 0.0], [3.0, 4.0], [20.0, 0.0]]), 5.0)
    array([[False,  True, False],
           [ True, False, False],
           [False, False, False]])
    """
    positions = np.asarray(positions, dtype=np.float64)
    diff = positions[:, np.newaxis, :] - positions[np.newaxis, :, :]
    squared = np.sum(diff ** 2, axis=-1)
    linked = squared <= link_range * link_range
    np.fill_diagonal(linked, False)
    return linked


def graph_from_adjacency(adjacency: np.ndarray) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(adjacency.shape[0]))
    rows, cols = np.nonzero(np.triu(adjacency, k=1))
    graph.add_edges_from((int(u), int(v)) for u, v in zip(rows, cols))
    return graph


@dataclass(frozen=True, eq=False)
class Topology:
    """
    Positions of the swarm together with its communication graph.

    ``positions`` and ``home_positions`` are ``(U, 2)`` arrays indexed by UAV
    id. Build instances with :func:`Topology.from_positions` so the adjacency
    always matches the positions.
    """

    positions: np.ndarray
    home_positions: np.ndarray
    comm_range: float
    max_drift: float
    area: Tuple[float, float]
    adjacency: np.ndarray = field(repr=False)

    @classmethod
    def from_positions(
        cls,
        positions: np.ndarray,
        comm_range: float,
        max_drift: float = 0.0,
        area: Optional[Tuple[float, float]] = None,
        home_positions: Optional[np.ndarray] = None,
    ) -> "Topology":
        positions = np.array(positions, dtype=np.float64)
        if positions.ndim != 2 or positions.shape[1] != 2:
            raise TopologyError(f"Expected (U, 2) positions, got {positions.shape}")
        if home_positions is None:
            home_positions = positions.copy()
        if area is None:
            width, height = positions.max(axis=0) if len(positions) else (0.0, 0.0)
            area = (float(width), float(height))
        return cls(
            positions=positions,
            home_positions=np.array(home_positions, dtype=np.float64),
            comm_range=float(comm_range),
            max_drift=float(max_drift),
            area=area,
            adjacency=adjacency_matrix(positions, comm_range),
        )

    @property
    def num_uavs(self) -> int:
        return self.positions.shape[0]

    @property
    def graph(self) -> nx.Graph:
        graph = self.__dict__.get("_graph")
        if graph is None:
            graph = graph_from_adjacency(self.adjacency)
            self.__dict__["_graph"] = graph
        return graph

    def at_home(self) -> "Topology":
        """The same swarm with every UAV back at its deployment position."""
        return Topology.from_positions(
            self.home_positions,
            self.comm_range,
            self.max_drift,
            area=self.area,
            home_positions=self.home_positions,
        )

    def is_linked(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u, v])


def deploy_swarm(config: SwarmConfig) -> Topology:
    """
    Sample UAV positions uniformly in the area until the communication graph
    is connected.

    The whole layout is resampled on every attempt, so the result only depends
    on ``config``.

    Parameters
    ----------
    config: SwarmConfig

    Raises
    ------
    InfeasibleDensityError
        If no connected layout was found in ``MAX_DEPLOY_ATTEMPTS`` attempts.

    Returns
    -------
    Topology
    """
    rng = np.random.default_rng(config.rng_seed)
    area = (config.area_width, config.area_height)
    for attempt in range(1, MAX_DEPLOY_ATTEMPTS + 1):
        positions = rng.uniform(
            low=(0.0, 0.0), high=area, size=(config.num_uavs, 2)
        )
        topology = Topology.from_positions(
            positions, config.comm_range, config.max_drift, area=area
        )
        if is_connected(topology):
            logger.debug(
                f"Deployed {config.num_uavs} UAVs after {attempt} attempt(s), "
                f"{topology.graph.number_of_edges()} links"
            )
            return topology
    raise InfeasibleDensityError(
        f"infeasible density: {config.num_uavs} UAVs in a "
        f"{config.area_width} x {config.area_height} m area with a communication "
        f"range of {config.comm_range} m did not produce a connected swarm in "
        f"{MAX_DEPLOY_ATTEMPTS} layouts"
    )


def is_connected(topology: Topology) -> bool:
    """True if every UAV can reach UAV 0 over the communication graph."""
    if topology.num_uavs == 0:
        return False
    reached = nx.node_connected_component(topology.graph, 0)
    return len(reached) == topology.num_uavs


def apply_drift(topology: Topology, round: int, rng_seed: int) -> Topology:
    """
    Move every UAV to its home position plus an offset drawn uniformly from
    the disk of radius ``max_drift``.

    Offsets are always taken from the home position, so no UAV ever ends up
    further than ``max_drift`` from where it was deployed, whatever the number
    of rounds. Positions are kept inside the deployment area.

    Parameters
    ----------
    topology: Topology
    round: int
        Training round, starting at 1.
    rng_seed: int
        Seed of the drift process; ``(rng_seed, round)`` fixes the result.

    Returns
    -------
    Topology
    """
    if round < 1:
        raise TopologyError(f"Drift is applied from round 1, got round {round}")
    rng = np.random.default_rng([rng_seed, round])
    radius = topology.max_drift
    home = topology.home_positions
    offsets = np.zeros_like(home)
    pending = np.arange(home.shape[0])
    while pending.size:
        candidates = rng.uniform(-radius, radius, size=(pending.size, 2))
        inside = np.sum(candidates ** 2, axis=1) <= radius * radius
        offsets[pending[inside]] = candidates[inside]
        pending = pending[~inside]
    positions = np.clip(home + offsets, 0.0, topology.area)
    return Topology.from_positions(
        positions,
        topology.comm_range,
        topology.max_drift,
        area=topology.area,
        home_positions=home,
    )


def shortest_path_hops(topology: Topology, src: int, dst: int) -> Optional[int]:
    """
    Minimum number of links between ``src`` and ``dst``.

    Returns
    -------
    Optional[int]
        The hop count, ``0`` when ``src == dst`` and ``None`` when ``dst`` is
        unreachable from ``src``.
    """
    for uav in (src, dst):
        if not 0 <= uav < topology.num_uavs:
            raise TopologyError(
                f"UAV id {uav} out of range for a swarm of {topology.num_uavs}"
            )
    try:
        return nx.shortest_path_length(topology.graph, src, dst)
    except nx.NetworkXNoPath:
        return None
