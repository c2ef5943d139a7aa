"""Lichnerowicz sharpness verdicts, inequality checks and the positive-curvature classification."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Optional, Sequence

import numpy as np

from . import families
from .exact import QuadraticSurd, fmt
from .graph import Graph, GraphError, diameter, girth, line_graph, neighborhood_split
from .isomorphism import is_isomorphic
from .regularity import (
    AmplyParams,
    IntersectionArray,
    amply_params,
    intersection_array,
    is_terwilliger,
    regular_degree,
)
from .spectra import (
    SpectrumReport,
    adjacency_spectrum,
    laplacian_nullity,
    srg_closed_form,
    srg_eigenvalues,
)
from .transport import CurvatureReport, OptimalityError, curvature_report

NUMERIC_TOL = 1e-9
SHARP_GAP = 1e-6          # no positive Laplacian eigenvalue may sit this far below kappa_min
ISOMORPHISM_CAP = 64


# ---------------------------------------------------------------------------
# sharpness

@dataclass
class SharpnessVerdict:
    kappa_min: Fraction
    lambda1: float
    lambda1_exact: Optional[QuadraticSurd]
    sharp: bool
    mode: str                         # "exact_certified" or "numeric_tolerance"
    classification: Optional[str] = None
    min_edge: Optional[tuple[int, int]] = None

    def to_dict(self) -> dict:
        return {
            "sharp": self.sharp,
            "mode": self.mode,
            "kappa_min": fmt(self.kappa_min),
            "lambda1": f"{self.lambda1:.12g}",
            "lambda1_exact": None if self.lambda1_exact is None else str(self.lambda1_exact),
            "classification": self.classification,
            "min_edge": list(self.min_edge) if self.min_edge else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def sharpness(g: Graph, curvature: CurvatureReport | None = None, spectrum: SpectrumReport | None = None,
              automorphisms: Sequence[Sequence[int]] | None = None, exact: bool = True,
              workers: int = 1) -> SharpnessVerdict:
    """Decide whether ``lambda_1`` equals the minimum edge curvature."""
    g.require_connected()
    if g.m == 0:
        raise GraphError("graph has no edges")
    curvature = curvature or curvature_report(g, automorphisms, workers=workers)
    spectrum = spectrum or adjacency_spectrum(g, exact=exact)
    kappa = curvature.kappa_min
    lam = spectrum.lambda1
    if lam < float(kappa) - NUMERIC_TOL:
        raise OptimalityError(f"lambda_1 = {lam} below the minimum curvature {kappa}")
    verdict = SharpnessVerdict(kappa, lam, spectrum.exact_lambda1, False, "numeric_tolerance",
                               min_edge=curvature.argmin())
    if not exact:
        verdict.sharp = abs(lam - float(kappa)) < NUMERIC_TOL
    elif kappa <= 0:
        # connected, so the zero eigenvalue is simple and lambda_1 > 0
        verdict.mode = "exact_certified"
    elif spectrum.exact_lambda1 is not None and spectrum.certified and spectrum.exact_lambda1 == kappa:
        verdict.sharp = True
        verdict.mode = "exact_certified"
    else:
        located = laplacian_nullity(g, kappa) > 0
        # kappa is an eigenvalue and nothing numerically smaller is nonzero
        verdict.sharp = located and lam >= float(kappa) - SHARP_GAP
        verdict.mode = "exact_certified"
    if verdict.sharp:
        verdict.classification = sharp_family_label(g)
    return verdict


# ---------------------------------------------------------------------------
# families named by the distance-regular classification

def hamming_array(d: int, q: int) -> IntersectionArray:
    return IntersectionArray(tuple((d - i) * (q - 1) for i in range(d)), tuple(range(1, d + 1)))


def johnson_array(n: int, k: int) -> IntersectionArray:
    k = min(k, n - k)
    return IntersectionArray(tuple((k - i) * (n - k - i) for i in range(k)),
                             tuple(i * i for i in range(1, k + 1)))


def demi_cube_array(n: int) -> IntersectionArray:
    D = n // 2
    return IntersectionArray(tuple(comb(n - 2 * i, 2) for i in range(D)),
                             tuple(comb(2 * i, 2) for i in range(1, D + 1)))


SCHLAFLI_ARRAY = IntersectionArray((16, 5), (1, 8))
GOSSET_ARRAY = IntersectionArray((27, 10, 1), (1, 10, 27))


def sharp_family_candidates(n: int, ia: IntersectionArray) -> list[str]:
    """Labels from the sharp distance-regular list whose vertex count and array match."""
    out = []
    if ia.diameter == 1:
        out.append(f"complete({n})")
    if n % 2 == 0 and n >= 4 and ia == IntersectionArray((n - 2, 1), (1, n - 2)):
        out.append(f"cocktail_party({n // 2})")
    for d in range(1, n.bit_length() + 1):
        q = round(n ** (1 / d))
        for qq in (q - 1, q, q + 1):
            if qq >= 2 and qq ** d == n and ia == hamming_array(d, qq):
                out.append(f"hamming({d},{qq})")
    for nn in range(2, n + 2):
        for k in range(1, nn // 2 + 1):
            if comb(nn, k) == n and ia == johnson_array(nn, k):
                out.append(f"johnson({nn},{k})")
    if n & (n - 1) == 0:
        nn = n.bit_length()
        if nn >= 2 and ia == demi_cube_array(nn):
            out.append(f"demi_cube({nn})")
    if n == 27 and ia == SCHLAFLI_ARRAY:
        out.append("schlafli")
    if n == 56 and ia == GOSSET_ARRAY:
        out.append("gosset")
    return out


def sharp_family_label(g: Graph) -> Optional[str]:
    ia = intersection_array(g)
    if not ia:
        return None
    found = sharp_family_candidates(g.n, ia)
    return found[0] if found else None


# ---------------------------------------------------------------------------
# inequality checks

@dataclass
class Clause:
    name: str
    status: str                      # "pass", "fail" or "skipped"
    detail: str = ""
    witness: tuple = ()


@dataclass
class BoundsReport:
    clauses: list[Clause]

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.clauses)

    def __getitem__(self, name: str) -> Clause:
        return next(c for c in self.clauses if c.name == name)

    def to_json(self) -> str:
        return json.dumps([asdict(c) for c in self.clauses], indent=2, default=str)


def check_bounds(g: Graph, curvature: CurvatureReport | None = None,
                 spectrum: SpectrumReport | None = None) -> BoundsReport:
    """Evaluate every applicable curvature/parameter/eigenvalue inequality on ``g``."""
    g.require_connected()
    clauses: list[Clause] = []
    d = regular_degree(g)
    curv = curvature

    def kappas() -> CurvatureReport:
        nonlocal curv
        if curv is None:
            curv = curvature_report(g)
        return curv

    name = "neighbour_curvature_bound"
    if d is None or g.m == 0:
        clauses.append(Clause(name, "skipped", "not regular"))
    else:
        bad = next((e for e, k in sorted(kappas().kappa.items())
                    if k > Fraction(2 + len(neighborhood_split(g, *e).common), d)), None)
        clauses.append(Clause(name, "fail" if bad else "pass",
                              "kappa(x,y) <= (2+|N_xy|)/d on every edge", bad or ()))

    params = amply_params(g)
    skip_amply = [
        "amply_parameter_inequality", "terwilliger_curvature_bound",
        "srg_parameter_identity", "srg_lambda1_bound", "srg_closed_form_agreement",
    ]
    if not params:
        for nm in skip_amply:
            clauses.append(Clause(nm, "skipped", f"not amply regular ({params.reason})"))
        return BoundsReport(clauses)
    n, d, alpha, beta = params.as_tuple()

    lhs = 2 * alpha + 3 - beta
    clauses.append(Clause(
        "amply_parameter_inequality", "pass" if d >= lhs else "fail",
        f"d={d} >= 2*alpha+3-beta={lhs}" + (" (equality)" if d == lhs else ""),
    ))

    terw = is_terwilliger(g)
    if terw:
        cap = Fraction(2 * alpha + 3 - d, d)
        ks = kappas().kappa
        bad = next((e for e, k in sorted(ks.items()) if k > cap), None)
        tight = sum(1 for k in ks.values() if k == cap)
        clauses.append(Clause("terwilliger_curvature_bound", "fail" if bad else "pass",
                              f"kappa <= {fmt(cap)}; equality on {tight}/{len(ks)} edges", bad or ()))
    else:
        clauses.append(Clause("terwilliger_curvature_bound", "skipped", "not a Terwilliger graph"))

    if diameter(g) != 2:
        for nm in skip_amply[2:]:
            clauses.append(Clause(nm, "skipped", "diameter is not 2"))
        return BoundsReport(clauses)

    ok = (n - d - 1) * beta == d * (d - alpha - 1)
    clauses.append(Clause("srg_parameter_identity", "pass" if ok else "fail",
                          f"(n-d-1)*beta={(n - d - 1) * beta}, d(d-alpha-1)={d * (d - alpha - 1)}"))

    lam1, _ = srg_closed_form(params)
    if params.as_tuple() == (5, 2, 0, 1):
        clauses.append(Clause("srg_lambda1_bound", "skipped", "pentagon is excluded"))
    else:
        bound = Fraction(2 + alpha, d)
        equal = lam1 == bound
        rigid = d == 2 * alpha - beta + 4
        status = "pass" if lam1 >= bound and equal == rigid else "fail"
        clauses.append(Clause("srg_lambda1_bound", status,
                              f"lambda1={lam1} vs (2+alpha)/d={fmt(bound)}; equality={equal}, "
                              f"d==2alpha-beta+4: {rigid}"))

    spectrum = spectrum or adjacency_spectrum(g, exact=False)
    gap = abs(spectrum.lambda1 - float(lam1))
    clauses.append(Clause("srg_closed_form_agreement", "pass" if gap < NUMERIC_TOL else "fail",
                          f"|numeric - closed form| = {gap:.3e}"))
    return BoundsReport(clauses)


@dataclass
class LineGraphCheck:
    applicable: bool
    reason: str
    kappa_min: Optional[Fraction] = None
    edge: Optional[tuple[int, int]] = None

    @property
    def holds(self) -> Optional[bool]:
        return None if not self.applicable else self.kappa_min <= 0


def check_line_graph_nonpositive(host: Graph, workers: int = 1) -> LineGraphCheck:
    """For a regular host of girth >= 5 and diameter >= 3, find a non-positively curved edge of its line graph."""
    if host.n == 0 or not host.is_connected():
        return LineGraphCheck(False, "host is not connected")
    if regular_degree(host) is None:
        return LineGraphCheck(False, "host is not regular")
    gi = girth(host)
    if gi is not None and gi < 5:
        return LineGraphCheck(False, f"host girth {gi} < 5")
    diam = diameter(host)
    if diam < 3:
        return LineGraphCheck(False, f"host diameter {diam} < 3")
    report = curvature_report(line_graph(host), workers=workers)
    return LineGraphCheck(True, "applicable", report.kappa_min, report.argmin())


# ---------------------------------------------------------------------------
# amply regular Terwilliger graphs with positive curvature

@dataclass(frozen=True)
class KnownArtg:
    name: str
    params: tuple[int, int, int, int]
    build: Optional[Callable[[], Graph]]
    host: Optional[tuple[int, int, int, int]] = None    # SRG whose line graph this is

    def line_graph_spectrum(self) -> Optional[dict[float, int]]:
        """Adjacency spectrum predicted from the host's parameters (line graphs only)."""
        if self.host is None:
            return None
        v, k, _, _ = self.host
        r, s = srg_eigenvalues(AmplyParams(*self.host))
        if not (r.is_rational and s.is_rational):
            return None
        r, s = r.a, s.a
        f = (-k - (v - 1) * s) / (r - s)
        spectrum = {2 * k - 2: 1, r + k - 2: int(f), s + k - 2: v - 1 - int(f)}
        spectrum[-2] = spectrum.get(-2, 0) + v * k // 2 - v
        return {float(t): m for t, m in spectrum.items() if m}


KNOWN_POSITIVE_ARTG = (
    KnownArtg("pentagon", (5, 2, 0, 1), lambda: families.cycle(5)),
    KnownArtg("icosahedron", (12, 5, 2, 2), families.icosahedron),
    KnownArtg("line_graph(petersen)", (15, 4, 1, 1), lambda: line_graph(families.petersen()), (10, 3, 0, 1)),
    KnownArtg("line_graph(hoffman_singleton)", (175, 12, 5, 1),
              lambda: line_graph(families.hoffman_singleton()), (50, 7, 0, 1)),
    # the line graph of a hypothetical SRG(3250,57,0,1)
    KnownArtg("line_graph(srg(3250,57,0,1))", (3250 * 57 // 2, 112, 55, 1), None, (3250, 57, 0, 1)),
)


def _spectrum_matches(g: Graph, expected: Optional[dict[float, int]]) -> bool:
    if expected is None:
        return True
    got = adjacency_spectrum(g, exact=False).distinct_adjacency()
    want = sorted(expected.items(), reverse=True)
    return len(got) == len(want) and all(
        abs(a - b) < 1e-6 and k == m for (a, k), (b, m) in zip(got, want)
    )


@dataclass
class ArtgVerdict:
    amply: Optional[AmplyParams]
    terwilliger: bool
    kappa_min: Optional[Fraction]
    member: bool
    match: Optional[str] = None
    match_level: Optional[str] = None     # "isomorphism" or "parameters"
    counterexample: bool = False
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "amply_params": None if self.amply is None else list(self.amply.as_tuple()),
            "terwilliger": self.terwilliger,
            "kappa_min": None if self.kappa_min is None else fmt(self.kappa_min),
            "member": self.member,
            "match": self.match,
            "match_level": self.match_level,
            "counterexample_candidate": self.counterexample,
            "reason": self.reason,
        }


def classify_artg(g: Graph, curvature: CurvatureReport | None = None,
                  automorphisms: Sequence[Sequence[int]] | None = None, workers: int = 1) -> ArtgVerdict:
    """Is ``g`` an amply regular Terwilliger graph of positive curvature, and which known one?"""
    if g.n == 0 or not g.is_connected():
        return ArtgVerdict(None, False, None, False, reason="not connected")
    params = amply_params(g)
    if not params:
        return ArtgVerdict(None, False, None, False, reason=f"not amply regular ({params.reason})")
    terw = is_terwilliger(g)
    if not terw:
        return ArtgVerdict(params, False, None, False, reason=f"not Terwilliger ({terw.reason})")
    curvature = curvature or curvature_report(g, automorphisms, workers=workers)
    kappa = curvature.kappa_min
    if kappa <= 0:
        return ArtgVerdict(params, True, kappa, False, reason="minimum curvature is not positive")
    verdict = ArtgVerdict(params, True, kappa, True)
    for known in KNOWN_POSITIVE_ARTG:
        if known.params != params.as_tuple():
            continue
        if known.build is not None and g.n <= ISOMORPHISM_CAP:
            if is_isomorphic(g, known.build()):
                verdict.match, verdict.match_level = known.name, "isomorphism"
                return verdict
            continue
        if not _spectrum_matches(g, known.line_graph_spectrum()):
            continue
        verdict.match, verdict.match_level = known.name, "parameters"
        return verdict
    verdict.counterexample = True
    verdict.reason = "positively curved amply regular Terwilliger graph outside the known list"
    return verdict


def edge_common_neighbours(g: Graph) -> Optional[int]:
    """Common-neighbour count shared by every edge, or ``None``."""
    if g.m == 0:
        return None
    a = g.adjacency_matrix()
    counts = np.unique((a @ a)[a == 1])
    return int(counts[0]) if counts.size == 1 else None


def lichnerowicz_bound(g: Graph) -> Optional[Fraction]:
    """``(2 + alpha) / d`` for an edge-regular graph."""
    d = regular_degree(g)
    alpha = edge_common_neighbours(g)
    if d is None or alpha is None or d == 0:
        return None
    return Fraction(2 + alpha, d)
