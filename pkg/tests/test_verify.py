from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings

from lichsharp import families as fam
from lichsharp import verify
from lichsharp.graph import GraphError, build, line_graph
from lichsharp.spectra import adjacency_spectrum
from lichsharp.transport import curvature_report
from lichsharp.verify import (
    check_bounds,
    check_line_graph_nonpositive,
    classify_artg,
    lichnerowicz_bound,
    sharp_family_label,
    sharpness,
)
from small_corpus import LABELS, graph
from strategies import connected_graphs

F = Fraction


def test_hamming_2_3_sharp():
    v = sharpness(fam.hamming(2, 3))
    assert v.sharp and v.kappa_min == F(3, 4) and v.lambda1_exact == F(3, 4)
    assert v.mode == "exact_certified"
    assert v.classification == "hamming(2,3)"


def test_petersen_not_sharp():
    v = sharpness(fam.petersen())
    assert not v.sharp
    assert v.kappa_min == 0 and v.lambda1_exact == F(2, 3)


def test_icosahedron_not_sharp():
    v = sharpness(fam.icosahedron())
    assert v.kappa_min == F(2, 5) and not v.sharp
    data = json.loads(v.to_json())
    assert data["sharp"] is False and data["kappa_min"] == "2/5"


@pytest.mark.parametrize("family, params", [
    ("johnson", (6, 3)),
    ("demi_cube", (6,)),
    ("schlafli", ()),
    ("gosset", ()),
    ("cocktail_party", (4,)),
])
def test_sharp_family_labels(family, params):
    g = fam.generate(family, *params)
    v = sharpness(g, automorphisms=fam.automorphism_generators(family, *params))
    assert v.sharp
    assert v.classification == sharp_family_label(g)
    assert v.classification.startswith(family) or family == "cocktail_party"


def test_numeric_mode_matches_exact_on_corpus_sample():
    for label in ["petersen", "hamming(2,3)", "icosahedron", "line_graph(petersen)", "triangular(5)"]:
        g = graph(label)
        assert sharpness(g, exact=False).sharp == sharpness(g).sharp, label


def test_edgeless_rejected():
    with pytest.raises(GraphError):
        sharpness(build(1, []))


def test_hoffman_singleton_line_graph_bounds():
    g = line_graph(fam.hoffman_singleton())
    report = check_bounds(g)
    assert report.ok
    clause = report["terwilliger_curvature_bound"]
    assert clause.status == "pass" and "1/12" in clause.detail
    assert "equality on 1050/1050 edges" in clause.detail
    assert report["srg_parameter_identity"].status == "skipped"


def test_shrikhande_bounds():
    report = check_bounds(fam.shrikhande())
    assert report.ok
    assert report["srg_lambda1_bound"].status == "pass"
    assert report["terwilliger_curvature_bound"].status == "skipped"
    assert "equality=True" in report["srg_lambda1_bound"].detail


def test_pentagon_skip():
    report = check_bounds(fam.cycle(5))
    assert report["srg_lambda1_bound"].status == "skipped"
    assert report.ok


def test_irregular_skips():
    paw = build(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    report = check_bounds(paw)
    assert all(c.status == "skipped" for c in report.clauses)


@pytest.mark.parametrize("label", LABELS)
def test_bounds_hold_on_corpus(label):
    report = check_bounds(graph(label))
    assert report.ok, [c for c in report.clauses if c.status == "fail"]


def test_line_graph_check():
    for host in (fam.dodecahedron(), fam.heawood()):
        res = check_line_graph_nonpositive(host)
        assert res.applicable and res.holds, res
    res = check_line_graph_nonpositive(fam.petersen())
    assert not res.applicable and "diameter" in res.reason
    res = check_line_graph_nonpositive(fam.hamming(3, 2))
    assert not res.applicable and "girth" in res.reason


def test_classify_examples():
    v = classify_artg(fam.cycle(5))
    assert v.member and v.match == "pentagon" and v.match_level == "isomorphism"
    v = classify_artg(line_graph(fam.petersen()))
    assert v.member and v.match == "line_graph(petersen)" and v.kappa_min == F(1, 4)
    v = classify_artg(fam.hamming(2, 3))
    assert not v.member and not v.terwilliger
    v = classify_artg(fam.petersen())
    assert v.terwilliger and not v.member and v.kappa_min == 0


def test_classify_parameter_level_match():
    v = classify_artg(line_graph(fam.hoffman_singleton()))
    assert v.member and v.match_level == "parameters" and v.kappa_min == F(1, 12)


def test_counterexample_flagged(monkeypatch):
    monkeypatch.setattr(verify, "KNOWN_POSITIVE_ARTG", verify.KNOWN_POSITIVE_ARTG[1:])
    v = classify_artg(fam.cycle(5))
    assert v.counterexample and v.member


def test_lichnerowicz_bound():
    assert lichnerowicz_bound(fam.hamming(2, 3)) == F(3, 4)
    assert lichnerowicz_bound(build(4, [(0, 1), (1, 2), (0, 2), (2, 3)])) is None


@settings(max_examples=40)
@given(connected_graphs(min_n=2, max_n=9))
def test_lambda1_dominates_min_curvature(g):
    curv = curvature_report(g)
    spec = adjacency_spectrum(g)
    assert spec.lambda1 >= float(curv.kappa_min) - 1e-9
    v = sharpness(g, curvature=curv, spectrum=spec)
    assert v.sharp == (abs(spec.lambda1 - float(curv.kappa_min)) < 1e-9)


def test_predicted_line_graph_spectra():
    for known in verify.KNOWN_POSITIVE_ARTG:
        spec = known.line_graph_spectrum()
        if spec is None:
            continue
        assert sum(spec.values()) == known.params[0]
        assert max(spec) == known.params[1]
        # trace of A^2 counts every edge twice
        assert sum(t * t * m for t, m in spec.items()) == known.params[0] * known.params[1]
    lp = verify.KNOWN_POSITIVE_ARTG[2]
    got = dict(adjacency_spectrum(lp.build(), exact=False).distinct_adjacency())
    assert {round(k, 9): v for k, v in got.items()} == lp.line_graph_spectrum()


def test_parameter_match_requires_matching_spectrum(monkeypatch):
    wrong = verify.KnownArtg("line_graph(hoffman_singleton)", (175, 12, 5, 1), None, (50, 7, 0, 1))
    monkeypatch.setattr(wrong.__class__, "line_graph_spectrum", lambda self: {12.0: 1, 6.0: 174})
    monkeypatch.setattr(verify, "KNOWN_POSITIVE_ARTG", (wrong,))
    v = classify_artg(line_graph(fam.hoffman_singleton()))
    assert v.counterexample
