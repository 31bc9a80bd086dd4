import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cds_forge.graph import (
    ComponentIndex,
    DisconnectedGraph,
    GraphError,
    MalformedEdge,
    NodeInC,
    NonPositiveCost,
    build_graph,
    induced_components,
    max_degree,
)

from conftest import complete_graph, path_graph, random_connected, star_graph, states


def test_build_path(p3):
    assert p3.n == 3
    assert p3.adjacency == ((1,), (0, 2), (1,))
    assert p3.costs == (1, 1, 1)
    assert p3.edges() == [(0, 1), (1, 2)]


def test_costs_are_exact():
    g = build_graph([(0, 1)], ["1/3", Fraction(2, 7)])
    assert g.costs == (Fraction(1, 3), Fraction(2, 7))
    with pytest.raises(TypeError):
        build_graph([(0, 1)], [0.5, 1])


@pytest.mark.parametrize(
    "edges, costs, error",
    [
        ([(0, 1)], [1, 0], NonPositiveCost),
        ([(0, 1)], [1, -2], NonPositiveCost),
        ([(0, 1), (2, 3)], [1, 1, 1, 1], DisconnectedGraph),
        ([(0, 0)], [1], MalformedEdge),
        ([(0, 1), (1, 0)], [1, 1], MalformedEdge),
        ([(0, 2)], [1, 1], MalformedEdge),
        ([], [], GraphError),
    ],
)
def test_build_rejects(edges, costs, error):
    with pytest.raises(error):
        build_graph(edges, costs)


def test_single_node_is_connected():
    assert build_graph([], [3]).n == 1


@pytest.mark.parametrize(
    "graph, expected",
    [(path_graph(3), 2), (path_graph(2), 1), (star_graph(4), 4), (complete_graph(5), 4)],
)
def test_max_degree(graph, expected):
    assert max_degree(graph) == expected


def test_component_neighbors_empty(p3):
    idx = ComponentIndex(p3)
    assert all(idx.component_neighbors(u) == set() for u in range(3))


def test_component_neighbors_path(p3):
    idx = ComponentIndex(p3)
    idx.add_node(0)
    idx.add_node(2)
    # BFS oracle: G[{0, 2}] has two components
    assert len(induced_components(p3, {0, 2})) == 2
    roots = idx.component_neighbors(1)
    assert roots == {idx.component_of(0), idx.component_of(2)}
    assert len(roots) == 2

    idx = ComponentIndex(p3)
    idx.add_node(0)
    idx.add_node(1)
    assert len(induced_components(p3, {0, 1})) == 1
    assert len(idx.component_neighbors(2)) == 1


def test_component_neighbors_rejects_selected(p3):
    idx = ComponentIndex(p3)
    idx.add_node(1)
    with pytest.raises(NodeInC):
        idx.component_neighbors(1)
    with pytest.raises(NodeInC):
        idx.add_node(1)


def test_add_node_counts():
    g = path_graph(3)
    idx = ComponentIndex(g)
    assert idx.add_node(0) == 1 and idx.count == 1
    assert idx.add_node(2) == 1 and idx.count == 2
    assert idx.add_node(1) == -1 and idx.count == 1

    k13 = star_graph(3)
    idx = ComponentIndex(k13)
    for leaf in (1, 2, 3):
        idx.add_node(leaf)
    assert idx.count == len(induced_components(k13, {1, 2, 3})) == 3
    idx.add_node(0)
    assert idx.count == 1


def test_copy_is_independent(p3):
    idx = ComponentIndex(p3)
    idx.add_node(0)
    twin = idx.copy()
    twin.add_node(1)
    assert idx.count == 1 and not idx.selected[1]
    assert twin.selected[1]


def test_incremental_count_matches_bfs_recount():
    rng = random.Random(20240)
    for _ in range(1000):
        g = random_connected(rng, rng.randint(1, 12), rng.choice([0.0, 0.15, 0.4]))
        chosen = [v for v in range(g.n) if rng.random() < 0.5]
        rest = [v for v in range(g.n) if v not in chosen]
        if not rest:
            continue
        u = rng.choice(rest)
        idx = ComponentIndex(g)
        for v in chosen:
            idx.add_node(v)
        idx.add_node(u)
        assert idx.count == len(induced_components(g, set(chosen) | {u}))


@settings(max_examples=200, deadline=None)
@given(states())
def test_component_neighbor_bounds(state):
    g, _, chosen = state
    idx = ComponentIndex(g)
    for v in sorted(chosen):
        idx.add_node(v)
    for u in range(g.n):
        if u in chosen:
            continue
        nc = idx.component_neighbors(u)
        assert len(nc) <= min(g.degree(u), len(chosen))
        drop = len(nc) - 1
        assert drop >= -1
        assert (drop == -1) == (not any(w in chosen for w in g.neighbors(u)))


@given(st.integers(1, 9))
def test_empty_selection_has_no_component_neighbors(n):
    g = path_graph(n)
    idx = ComponentIndex(g)
    assert all(idx.component_neighbors(u) == set() for u in range(n))
