from __future__ import annotations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lichsharp.graph import (
    UNREACHABLE,
    DisconnectedGraphError,
    Graph,
    GraphError,
    bfs_row,
    build,
    cartesian_product,
    complement,
    components,
    diameter,
    disjoint_union,
    from_adjacency_matrix,
    girth,
    induced,
    line_graph,
    local_graph,
    neighborhood_split,
)
from oracles import from_networkx
from strategies import connected_graphs, graphs


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_build_collapses_duplicates():
    g = build(3, [(0, 1), (1, 0), (0, 1), (1, 2)])
    assert g.m == 2
    assert g.adj == ((1,), (0, 2), (1,))


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(-1, 0)]])
def test_build_rejects_bad_edges(edges):
    with pytest.raises(GraphError):
        build(3, edges)


def test_constructor_validates():
    with pytest.raises(GraphError):
        Graph(2, ((1,), ()))
    with pytest.raises(GraphError):
        Graph(3, ((2, 1), (0,), (0,)))


def test_disconnected_witness():
    g = disjoint_union([build(2, [(0, 1)]), build(2, [(0, 1)])])
    assert g.distances[0, 2] == UNREACHABLE
    with pytest.raises(DisconnectedGraphError) as exc:
        g.require_connected()
    u, v = exc.value.witness
    assert g.distances[u, v] == UNREACHABLE
    assert components(g) == [[0, 1], [2, 3]]


def test_distances_read_only():
    g = build(3, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        g.distances[0, 0] = 5


@settings(max_examples=150)
@given(graphs(max_n=10))
def test_distances_match_networkx(g):
    ref = dict(nx.all_pairs_shortest_path_length(to_networkx(g)))
    for u in range(g.n):
        for v in range(g.n):
            assert g.distances[u, v] == ref[u].get(v, UNREACHABLE)


@settings(max_examples=100)
@given(connected_graphs(max_n=9))
def test_metric_axioms(g):
    d = g.distances.astype(int)
    assert (d == d.T).all()
    assert (np.diag(d) == 0).all()
    for k in range(g.n):
        assert (d <= d[:, [k]] + d[[k], :]).all()
    assert diameter(g) == nx.diameter(to_networkx(g))


@settings(max_examples=150)
@given(graphs(max_n=10))
def test_girth_matches_networkx(g):
    expected = nx.girth(to_networkx(g))
    assert girth(g) == (None if expected == float("inf") else expected)


@settings(max_examples=80)
@given(graphs(min_n=2, max_n=8))
def test_line_graph_matches_networkx(g):
    if g.m == 0:
        with pytest.raises(GraphError):
            line_graph(g)
        return
    lg = line_graph(g)
    edges = g.edges()
    ref = nx.line_graph(to_networkx(g))
    assert lg.m == ref.number_of_edges()
    for i, j in lg.edges():
        assert set(edges[i]) & set(edges[j])


@settings(max_examples=80)
@given(graphs(max_n=9))
def test_complement_involution(g):
    h = complement(g)
    assert h.m + g.m == g.n * (g.n - 1) // 2
    assert complement(h) == g


def test_adjacency_round_trip():
    g = build(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert from_adjacency_matrix(g.adjacency_matrix()) == g


def test_cartesian_product_labels():
    k2 = build(2, [(0, 1)])
    sq = cartesian_product(k2, k2)
    assert sorted(sq.edges()) == [(0, 1), (0, 2), (1, 3), (2, 3)]
    ref = nx.cartesian_product(nx.path_graph(3), nx.cycle_graph(4))
    assert cartesian_product(from_networkx(nx.path_graph(3)), from_networkx(nx.cycle_graph(4))).m == ref.number_of_edges()


def test_induced_and_local():
    g = build(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)])
    assert induced(g, [4, 2, 3]).edges() == [(0, 1), (1, 2)]
    assert local_graph(g, 2).edges() == [(0, 1)]


def test_neighborhood_split():
    g = build(5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)])
    s = neighborhood_split(g, 0, 1)
    assert (s.common, s.only_x, s.only_y) == ({2}, {3}, {4})
    with pytest.raises(GraphError):
        neighborhood_split(g, 3, 4)


@settings(max_examples=60)
@given(st.data())
def test_components_partition(data):
    g = data.draw(graphs(max_n=10))
    parts = components(g)
    assert sorted(v for c in parts for v in c) == list(range(g.n))
    assert len(parts) == nx.number_connected_components(to_networkx(g)) if g.n else parts == []


@given(graphs(max_n=10))
def test_bfs_rows_match_distance_matrix(g):
    for x in range(g.n):
        assert bfs_row(g, x) == g.distances[x].tolist()
