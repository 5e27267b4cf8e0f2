# -*- coding: utf-8 -*-

import networkx as nx
import numpy as np
import pytest

from skyfed.clustering import (
    ClusteringError,
    UnclusterableError,
    build_ch_graph,
    cluster_swarm,
    heads_cover_members,
    is_valid_layout,
    layout_for,
    mean_ch_hops,
    search_layout,
    select_heads,
    stretched_ch_links,
)
from skyfed.topology import SwarmConfig, Topology, apply_drift, deploy_swarm


def small_swarms(count=20):
    """Seeded 30 UAV swarms on a 400 m square, with their layouts."""
    for seed in range(count):
        config = SwarmConfig(
            num_uavs=30, area_width=400.0, area_height=400.0, rng_seed=seed
        )
        topology = deploy_swarm(config)
        try:
            layout = cluster_swarm(topology, config)
        except UnclusterableError:
            continue
        yield config, topology, layout


@pytest.fixture(scope="module")
def dense_swarm():
    config = SwarmConfig(num_uavs=200, rng_seed=42)
    topology = deploy_swarm(config)
    return config, topology, cluster_swarm(topology, config)


def test_select_heads_singleton():
    points = np.array([[3.0, 4.0], [50.0, 50.0]])
    assert select_heads(points, np.array([0, 1]), points) == (0, 1)


def test_select_heads_middle_point():
    points = np.array([[0.0, 0.0], [10.0, 0.0], [20.0, 0.0]])
    assert select_heads(points, np.zeros(3, dtype=int), np.array([[10.0, 0.0]])) == (1,)


def test_select_heads_tie_goes_to_smallest_id():
    points = np.array([[10.0, 0.0], [0.0, 0.0], [5.0, 30.0]])
    heads = select_heads(points, np.array([0, 0, 1]), np.array([[5.0, 0.0], [5.0, 30.0]]))
    assert heads == (0, 2)


def test_select_heads_rejects_empty_cluster():
    with pytest.raises(ClusteringError):
        select_heads(np.zeros((2, 2)), np.array([0, 0]), np.zeros((2, 2)))


def test_ch_graph_closed_threshold():
    linked = build_ch_graph([0, 1], np.array([[0.0, 0.0], [140.0, 0.0]]), 140.0)
    assert linked.has_edge(0, 1)
    apart = build_ch_graph([0, 1], np.array([[0.0, 0.0], [140.001, 0.0]]), 140.0)
    assert not apart.has_edge(0, 1)


def test_ch_graph_nodes_are_clusters():
    positions = np.array([[0.0, 0.0], [5.0, 0.0], [100.0, 0.0], [400.0, 0.0]])
    graph = build_ch_graph([3, 1], positions, 140.0)
    assert sorted(graph.nodes) == [0, 1]
    assert nx.get_node_attributes(graph, "head") == {0: 3, 1: 1}


def test_sigma_from_swarm_config():
    assert SwarmConfig(num_uavs=2, comm_range=150, max_drift=5).sigma == 140.0


def test_compact_swarm_is_one_cluster():
    positions = np.random.default_rng(0).uniform(0, 50, size=(10, 2))
    topology = Topology.from_positions(positions, 150.0, 5.0)
    layout = cluster_swarm(topology, SwarmConfig(num_uavs=10))
    assert layout.num_clusters == 1
    assert layout.training_uavs() == [u for u in range(10) if u != layout.heads[0]]


def test_two_blobs_take_the_smallest_bridging_q():
    rng = np.random.default_rng(4)
    left = rng.uniform(0, 20, size=(6, 2))
    right = rng.uniform(0, 20, size=(6, 2)) + [240.0, 0.0]
    bridge = np.array([[120.0, 10.0]])
    positions = np.vstack([left, right, bridge])
    topology = Topology.from_positions(positions, 150.0, 5.0)
    config = SwarmConfig(num_uavs=len(positions), rng_seed=8)

    layout = cluster_swarm(topology, config)

    first_connected = next(
        q
        for q in range(1, len(positions) + 1)
        if search_layout(positions, q, 140.0, seed=8) is not None
    )
    assert layout.num_clusters == first_connected
    assert is_valid_layout(layout, positions)


def test_unclusterable_swarm():
    """One head cannot reach both UAVs and two heads are not linked"""
    positions = np.array([[0.0, 0.0], [145.0, 0.0]])
    topology = Topology.from_positions(positions, 150.0, 5.0)
    with pytest.raises(UnclusterableError):
        cluster_swarm(topology, SwarmConfig(num_uavs=2))


def test_layout_is_minimal():
    checked = 0
    for config, topology, layout in small_swarms():
        assert nx.is_connected(layout.ch_graph)
        if layout.num_clusters > 1:
            smaller = search_layout(
                topology.positions,
                layout.num_clusters - 1,
                config.sigma,
                config.rng_seed,
            )
            assert smaller is None
        checked += 1
    assert checked >= 15


def test_restarts_never_need_more_clusters():
    for config, topology, layout in small_swarms(10):
        single = cluster_swarm(topology, config, restarts=1)
        assert layout.num_clusters <= single.num_clusters
        if layout.num_clusters == single.num_clusters:
            assert mean_ch_hops(layout) <= mean_ch_hops(single)


def test_search_layout_keeps_fewest_head_hops():
    config, topology, layout = next(small_swarms())
    q = layout.num_clusters
    best = search_layout(topology.positions, q, config.sigma, config.rng_seed, restarts=12)
    assert best is not None
    assert is_valid_layout(best, topology.positions)
    for restarts in (1, 4, 8):
        fewer = search_layout(
            topology.positions, q, config.sigma, config.rng_seed, restarts=restarts
        )
        if fewer is not None:
            assert mean_ch_hops(best) <= mean_ch_hops(fewer)


def test_search_layout_single_restart_is_one_kmeans_run():
    positions = np.array([[0.0, 0.0], [1.0, 0.0], [140.0, 0.0], [141.0, 0.0]])
    found = search_layout(positions, 2, 140.0, seed=0, restarts=1)
    assert found.heads == layout_for(positions, 2, 140.0, seed=0).heads
    assert mean_ch_hops(found) == 1.0


def test_search_layout_needs_a_restart():
    with pytest.raises(ClusteringError):
        search_layout(np.zeros((2, 2)), 1, 140.0, seed=0, restarts=0)


def test_dense_swarm_layout_is_consistent(dense_swarm):
    config, topology, layout = dense_swarm
    for cluster, head in enumerate(layout.heads):
        assert layout.assignment[head] == cluster
    assert sum(layout.cluster_sizes()) == config.num_uavs
    assert len(layout.training_uavs()) == config.num_uavs - layout.num_clusters


def test_ch_links_survive_drift(dense_swarm):
    config, topology, layout = dense_swarm
    for round_ in range(1, 101):
        assert stretched_ch_links(layout, apply_drift(topology, round_, 23)) == []


def test_stretched_ch_links_reports_broken_links():
    positions = np.array([[0.0, 0.0], [1.0, 0.0], [140.0, 0.0], [141.0, 0.0]])
    layout = layout_for(positions, 2, 140.0, seed=0)
    assert layout.ch_graph.number_of_edges() == 1
    far = positions.copy()
    far[2:] += [100.0, 0.0]
    assert stretched_ch_links(layout, Topology.from_positions(far, 150.0)) == [(0, 1)]


def test_heads_cover_members():
    positions = np.array([[0.0, 0.0], [140.0, 0.0], [300.0, 0.0]])
    one = layout_for(positions[:2], 1, 140.0, seed=0)
    assert heads_cover_members(one, positions[:2])
    spread = layout_for(positions, 1, 140.0, seed=0)
    assert not heads_cover_members(spread, positions)


def test_dense_swarm_needs_several_clusters(dense_swarm):
    config, topology, layout = dense_swarm
    assert layout.num_clusters > 1
    assert heads_cover_members(layout, topology.positions)
