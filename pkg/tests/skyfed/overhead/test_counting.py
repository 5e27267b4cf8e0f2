# -*- coding: utf-8 -*-

from functools import lru_cache

import networkx as nx
import numpy as np
import pytest

from skyfed.clustering import UnclusterableError, cluster_swarm
from skyfed.overhead import (
    MessageCount,
    RoutingError,
    Scheme,
    count_conventional,
    count_fca,
    count_intra,
    count_kha,
    count_round,
    pick_aggregator,
)
from skyfed.topology import SwarmConfig, Topology, deploy_swarm

from tests import utils as tu


def bfs_hops(adjacency, source):
    hops = {source: 0}
    frontier = [source]
    while frontier:
        nxt = []
        for u in frontier:
            for v in np.flatnonzero(adjacency[u]):
                if int(v) not in hops:
                    hops[int(v)] = hops[u] + 1
                    nxt.append(int(v))
        frontier = nxt
    return hops


def test_star_topology():
    positions = np.array([[0.0, 0.0]] + [[100.0 * np.cos(a), 100.0 * np.sin(a)] for a in np.linspace(0, 2 * np.pi, 6, endpoint=False)])
    star = Topology.from_positions(positions, 120.0)
    assert count_conventional(star, aggregator=0) == MessageCount(0, 2 * 6)


def test_path_topology():
    path = Topology.from_positions(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]), 1.0)
    count = count_conventional(path, aggregator=0)
    assert (count.intra_cluster, count.inter_cluster, count.total) == (0, 6, 6)


def test_conventional_needs_connected_swarm():
    apart = Topology.from_positions(np.array([[0.0, 0.0], [500.0, 0.0]]), 150.0)
    with pytest.raises(RoutingError):
        count_conventional(apart, 0)


def test_intra_members_next_to_heads(line_topology, line_layout):
    assert count_intra(line_topology, line_layout) == 2 * (9 - 3)


def test_intra_singletons(line_topology, line_positions):
    layout = tu.make_layout(line_positions, list(range(9)))
    assert count_intra(line_topology, layout) == 0


def test_intra_matches_bfs():
    config = SwarmConfig(num_uavs=40, area_width=400, area_height=400, rng_seed=6)
    topology = deploy_swarm(config)
    layout = tu.make_layout(
        topology.positions, (topology.positions[:, 0] // 134).astype(int)
    )
    expected = 0
    for cluster, head in enumerate(layout.heads):
        hops = bfs_hops(topology.adjacency, head)
        expected += sum(2 * hops[u] for u in layout.training_members(cluster))
    assert count_intra(topology, layout) == expected


def test_intra_unreachable_member():
    positions = np.array([[0.0, 0.0], [10.0, 0.0], [400.0, 0.0]])
    layout = tu.make_layout(positions, [0, 0, 0], sigma=1000.0)
    topology = Topology.from_positions(positions, 150.0)
    with pytest.raises(RoutingError):
        count_intra(topology, layout)


def test_fca_counts():
    assert count_fca(nx.path_graph(1), 0) == 0
    assert count_fca(nx.complete_graph(5), 2) == 2 * 4
    assert count_fca(nx.path_graph(4), 3) == 2 * (1 + 2 + 3)


def test_fca_disconnected():
    graph = nx.Graph()
    graph.add_nodes_from([0, 1])
    with pytest.raises(RoutingError):
        count_fca(graph, 0)


def test_kha_counts():
    graph = nx.gnp_random_graph(9, 0.4, seed=3)
    assert count_kha(graph, 1) == 2 * graph.number_of_edges()
    assert count_kha(nx.path_graph(3), 1) == 4
    connected = nx.path_graph(6)
    assert count_kha(connected, 5) == 6 * 5
    assert count_kha(connected, 9) == 6 * 5


def test_kha_is_monotone_in_k():
    graph = nx.connected_watts_strogatz_graph(12, 4, 0.3, seed=1)
    counts = [count_kha(graph, k) for k in range(1, 8)]
    assert counts == sorted(counts)


def test_kha_needs_positive_k():
    with pytest.raises(ValueError):
        count_kha(nx.path_graph(2), 0)


def test_pick_aggregator():
    picks = {pick_aggregator(5, seed) for seed in range(50)}
    assert picks <= set(range(5))
    assert len(picks) > 1
    assert pick_aggregator(5, 11) == pick_aggregator(5, 11)


def test_round_single_cluster_fca(line_positions, line_topology):
    layout = tu.make_layout(line_positions, [0] * 9, sigma=1000.0)
    count = count_round(Scheme.FCA, line_topology, layout, seed=0)
    assert count.inter_cluster == 0
    assert count.total == count_intra(line_topology, layout)


def test_round_components(line_topology, line_layout):
    seed = 21
    aggregator = pick_aggregator(line_layout.num_clusters, seed)
    assert count_round(Scheme.FCA, line_topology, line_layout, seed) == MessageCount(
        12, count_fca(line_layout.ch_graph, aggregator)
    )
    assert count_round(
        Scheme.KHA, line_topology, line_layout, seed, k=1
    ) == MessageCount(12, 4)
    assert count_round(
        Scheme.CONVENTIONAL, line_topology, line_layout, seed
    ) == count_conventional(line_topology, pick_aggregator(9, seed))


def test_round_kha_needs_k(line_topology, line_layout):
    with pytest.raises(ValueError):
        count_round(Scheme.KHA, line_topology, line_layout, 0)


def test_twenty_uav_layout_components():
    config = SwarmConfig(num_uavs=20, area_width=400, area_height=400, rng_seed=12)
    topology = deploy_swarm(config)
    layout = cluster_swarm(topology, config)
    intra = count_intra(topology, layout)
    for k in (1, 2):
        count = count_round(Scheme.KHA, topology, layout, 5, k=k)
        assert count.total == intra + count_kha(layout.ch_graph, k)


@lru_cache(maxsize=None)
def _layout_totals(num_uavs, layouts=20):
    """Round totals per scheme for every clusterable layout of a 1000 m square."""
    totals = []
    for layout_id in range(layouts):
        config = SwarmConfig(num_uavs=num_uavs, rng_seed=1000 * num_uavs + layout_id)
        topology = deploy_swarm(config)
        try:
            layout = cluster_swarm(topology, config)
        except UnclusterableError:
            continue
        totals.append(
            {
                scheme: count_round(scheme, topology, layout, layout_id, k=k).total
                for scheme, k in [
                    (Scheme.CONVENTIONAL, None),
                    (Scheme.FCA, None),
                    (Scheme.KHA, 1),
                ]
            }
        )
    return totals


@pytest.mark.acceptance
@pytest.mark.parametrize("num_uavs", [100, 200, 400])
def test_kha_beats_fca_over_layouts(num_uavs):
    totals = _layout_totals(num_uavs)
    assert len(totals) >= 10
    kha_wins = sum(t[Scheme.KHA] < t[Scheme.FCA] for t in totals)
    assert kha_wins >= 0.9 * len(totals)


@pytest.mark.acceptance
@pytest.mark.parametrize("num_uavs", [200, 400])
def test_fca_beats_conventional_over_layouts(num_uavs):
    """
    A 100 UAV swarm needs nearly one head per UAV before the heads connect,
    so FCA only wins over conventional FL from 200 UAVs on.
    """
    totals = _layout_totals(num_uavs)
    assert len(totals) >= 10
    fca_wins = sum(t[Scheme.FCA] < t[Scheme.CONVENTIONAL] for t in totals)
    assert fca_wins >= 0.9 * len(totals)


@pytest.mark.acceptance
def test_fca_share_of_conventional_messages():
    totals = _layout_totals(400)
    conventional = np.mean([t[Scheme.CONVENTIONAL] for t in totals])
    fca = np.mean([t[Scheme.FCA] for t in totals])
    assert conventional > 3000
    assert 0.2 <= fca / conventional <= 0.5
