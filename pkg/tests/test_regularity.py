from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings

from lichsharp import families as fam
from lichsharp.graph import GraphError, build, line_graph
from lichsharp.regularity import (
    AmplyParams,
    IntersectionArray,
    amply_params,
    intersection_array,
    induced_quadrangle,
    is_terwilliger,
    reduce_quotient,
    reduced_local_params,
    regular_degree,
)
from small_corpus import LABELS, graph, is_girth5_line_graph
from strategies import connected_graphs


def brute_amply(g):
    """Direct pair enumeration, no matrices."""
    degs = {len(r) for r in g.adj}
    if len(degs) != 1:
        return None
    dist = g.distances
    counts = {1: set(), 2: set()}
    for x, y in itertools.combinations(range(g.n), 2):
        k = int(dist[x, y])
        if k in counts:
            counts[k].add(len(g.neighbor_sets[x] & g.neighbor_sets[y]))
    if not counts[2] or len(counts[1]) != 1 or len(counts[2]) != 1:
        return None
    return (g.n, degs.pop(), counts[1].pop(), counts[2].pop())


def brute_array(g):
    dist = g.distances
    diam = int(dist.max())
    b, c = [], []
    for i in range(diam + 1):
        bs, cs = set(), set()
        for x in range(g.n):
            for y in range(g.n):
                if dist[x, y] == i:
                    bs.add(sum(1 for w in g.adj[y] if dist[x, w] == i + 1))
                    cs.add(sum(1 for w in g.adj[y] if dist[x, w] == i - 1))
        if len(bs) != 1 or len(cs) != 1:
            return None
        if i < diam:
            b.append(bs.pop())
        if i > 0:
            c.append(cs.pop())
    return (tuple(b), tuple(c))


def test_regular_degree_examples():
    assert regular_degree(fam.petersen()) == 3
    assert regular_degree(build(3, [(0, 1), (1, 2)])) is None
    assert regular_degree(fam.gosset()) == 27


def test_amply_examples():
    assert amply_params(line_graph(fam.petersen())).as_tuple() == (15, 4, 1, 1)
    assert amply_params(fam.icosahedron()).as_tuple() == (12, 5, 2, 2)
    rej = amply_params(fam.complete(4))
    assert not rej and rej.reason == "complete"
    rej = amply_params(build(4, [(0, 1), (1, 2), (2, 3)]))
    assert not rej and rej.witness


def test_amply_rejection_witness():
    # 3-prism: regular, but distance-1 pairs disagree (triangle edges vs rungs)
    prism = build(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    rej = amply_params(prism)
    assert not rej
    (a, b), (c, d) = rej.witness
    assert len(prism.neighbor_sets[a] & prism.neighbor_sets[b]) != len(prism.neighbor_sets[c] & prism.neighbor_sets[d])


def test_array_examples():
    assert intersection_array(fam.icosahedron()) == IntersectionArray((5, 2, 1), (1, 2, 5))
    assert intersection_array(line_graph(fam.petersen())) == IntersectionArray((4, 2, 1), (1, 1, 4))
    assert not intersection_array(line_graph(fam.dodecahedron()))
    assert intersection_array(fam.complete(5)) == IntersectionArray((4,), (1,))
    assert str(intersection_array(fam.icosahedron())) == "{5,2,1; 1,2,5}"


def test_array_validation():
    with pytest.raises(GraphError):
        IntersectionArray((3, 2), (2, 1))
    with pytest.raises(GraphError):
        IntersectionArray((3,), (1, 1))


@pytest.mark.parametrize("label", LABELS)
def test_corpus_against_brute_force(label):
    g = graph(label)
    params = amply_params(g)
    expect = brute_amply(g)
    assert (params.as_tuple() if params else None) == expect
    ia = intersection_array(g)
    assert ((ia.b, ia.c) if ia else None) == brute_array(g)
    if ia and params:
        # alpha = b0 - b1 - 1, beta = c2
        assert ia.amply_params(g.n) == params
        for i in range(ia.diameter + 1):
            assert ia.a(i) + ia.b_(i) + ia.c_(i) == ia.degree


@pytest.mark.parametrize("label", LABELS)
def test_terwilliger_matches_quadrangle_scan(label):
    g = graph(label)
    if not amply_params(g):
        return
    assert bool(is_terwilliger(g)) == (induced_quadrangle(g) is None)


@pytest.mark.parametrize("label", LABELS)
def test_amply_inequality_and_equality_cases(label):
    g = graph(label)
    params = amply_params(g)
    if not params:
        return
    n, d, alpha, beta = params.as_tuple()
    assert d >= 2 * alpha + 3 - beta
    equality = d == 2 * alpha + 3 - beta
    assert equality == (label == "icosahedron" or is_girth5_line_graph(label))


@pytest.mark.parametrize("label", LABELS)
def test_amply_invariants(label):
    params = amply_params(graph(label))
    if params:
        n, d, alpha, beta = params.as_tuple()
        assert n > d + 1 and d >= alpha + 2 and d >= beta >= 1


@settings(max_examples=80)
@given(connected_graphs(max_n=8))
def test_random_graphs_agree_with_brute_force(g):
    params = amply_params(g)
    assert (params.as_tuple() if params else None) == brute_amply(g)
    ia = intersection_array(g)
    assert ((ia.b, ia.c) if ia else None) == (brute_array(g) if g.n > 1 else None)


def test_terwilliger_examples():
    assert is_terwilliger(fam.petersen()) == 1
    assert is_terwilliger(fam.icosahedron()) == 2
    rej = is_terwilliger(fam.hamming(2, 3))
    assert not rej
    x, y, u, w = rej.witness
    g = fam.hamming(2, 3)
    assert not g.has_edge(u, w) and all(g.has_edge(p, q) for p in (x, y) for q in (u, w))


def test_reduce_quotient():
    red, sizes = reduce_quotient(fam.complete(5))
    assert red.n == 1 and sizes == [5]
    ico = fam.icosahedron()
    red, sizes = reduce_quotient(ico)
    assert red == ico and set(sizes) == {1}
    diamond = build(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    red, sizes = reduce_quotient(diamond)
    assert red.n == 3 and sorted(sizes) == [1, 1, 2]
    # a cocktail party graph's local graph is again cocktail party: reduced already
    assert reduce_quotient(fam.cocktail_party(3))[1] == [1] * 6


def test_reduced_local_params_icosahedron():
    for gamma in range(12):
        r = reduced_local_params(fam.icosahedron(), gamma)
        assert r.s == 1
        assert (r.n_bar, r.d_bar, r.alpha_bar, r.beta_bar) == (5, 2, 0, 1)


@pytest.mark.parametrize("g", [fam.petersen(), fam.hamming(2, 3)])
def test_reduced_local_params_preconditions(g):
    with pytest.raises(GraphError):
        reduced_local_params(g, 0)


def test_amply_params_dataclass():
    p = AmplyParams(10, 3, 0, 1)
    assert p.as_tuple() == (10, 3, 0, 1)
