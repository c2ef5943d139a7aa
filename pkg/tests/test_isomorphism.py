from __future__ import annotations

import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st

from lichsharp import families as fam
from lichsharp.graph import build, line_graph
from lichsharp.isomorphism import find_isomorphism, is_isomorphic
from strategies import graphs


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


@settings(max_examples=150)
@given(graphs(max_n=8), st.data())
def test_relabelled_copy_is_found(g, data):
    perm = data.draw(st.permutations(range(g.n)))
    h = build(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
    mapping = find_isomorphism(g, h)
    assert mapping is not None
    assert sorted(mapping) == list(range(g.n))
    assert all(h.has_edge(mapping[u], mapping[v]) for u, v in g.edges())


@settings(max_examples=150)
@given(graphs(max_n=7), graphs(max_n=7))
def test_agrees_with_networkx(g, h):
    assert is_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_named_coincidences():
    assert is_isomorphic(fam.petersen(), fam.kneser(5, 2))
    assert is_isomorphic(fam.demi_cube(5), fam.clebsch())
    assert is_isomorphic(fam.johnson(6, 2), fam.triangular(6))
    assert is_isomorphic(line_graph(fam.complete(4)), fam.cocktail_party(3))
    # same parameters (16,6,2,2), different graphs
    assert not is_isomorphic(fam.shrikhande(), fam.hamming(2, 4))
