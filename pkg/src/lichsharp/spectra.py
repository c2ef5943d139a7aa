"""Adjacency and normalised-Laplacian spectra, with exact certificates where possible.

Four routes cross-check each other: the dense symmetric eigensolver, the
strongly regular closed form, the tridiagonal intersection matrix of a
distance-regular graph, and the line-graph transfer rule.  Rational and
quadratic eigenvalues are certified by exact rank computations.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .exact import QuadraticSurd, integer_nullity
from .graph import Graph, GraphError
from .regularity import AmplyParams, IntersectionArray, regular_degree

RESIDUAL_TOL = 1e-10
CLUSTER_GAP = 1e-6


class SpectrumError(ArithmeticError):
    pass


@dataclass
class SpectrumReport:
    adjacency: list[float]          # descending, with multiplicity
    laplacian: list[float]          # normalised Laplacian, ascending
    theta1: float
    lambda1: float
    degree: Optional[int] = None    # common degree of a regular graph
    exact_lambda1: Optional[QuadraticSurd] = None
    certified: bool = False         # exact_lambda1 backed by an exact rank computation
    notes: list[str] = field(default_factory=list)

    def distinct_adjacency(self, gap: float = CLUSTER_GAP) -> list[tuple[float, int]]:
        return cluster(self.adjacency, gap)

    def to_json(self) -> str:
        def dec(x: float) -> str:
            # rounding noise around zero would otherwise print as +-1e-16
            return f"{0.0 if abs(x) < 1e-12 else x:.12g}"
        out = {
            "n": len(self.adjacency),
            "degree": self.degree,
            "adjacency": [{"value": dec(v), "multiplicity": k} for v, k in self.distinct_adjacency()],
            "theta1": dec(self.theta1),
            "lambda1": dec(self.lambda1),
            "lambda1_exact": str(self.exact_lambda1) if self.exact_lambda1 is not None else None,
            "lambda1_certified": self.certified,
        }
        return json.dumps(out, indent=2)


def cluster(values, gap: float = CLUSTER_GAP) -> list[tuple[float, int]]:
    """Group sorted eigenvalues into (mean, multiplicity) at the given gap."""
    vals = sorted(values, reverse=True)
    groups: list[list[float]] = []
    for v in vals:
        if groups and abs(groups[-1][-1] - v) < gap:
            groups[-1].append(v)
        else:
            groups.append([v])
    return [(float(np.mean(g)), len(g)) for g in groups]


def _eigh_checked(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    scale = max(1.0, float(np.abs(m).sum(axis=1).max()))
    resid = np.abs(m @ v - v * w).max() if m.size else 0.0
    if resid > RESIDUAL_TOL * scale:
        raise SpectrumError(f"eigensolver residual {resid:.3e} above tolerance")
    return w


# ---------------------------------------------------------------------------
# exact certificates

def exact_eigenvalue_certificate(g: Graph, theta: Fraction | int) -> int:
    """Multiplicity of ``theta`` as an adjacency eigenvalue (0 when it is not one)."""
    theta = Fraction(theta)
    a = g.adjacency_matrix(dtype=object) * theta.denominator
    for i in range(g.n):
        a[i, i] -= theta.numerator
    return integer_nullity(a)


def random_walk_nullity(g: Graph, nu: Fraction | int) -> int:
    """Multiplicity of ``nu`` as an eigenvalue of ``D^-1 A`` (same spectrum as ``D^-1/2 A D^-1/2``)."""
    nu = Fraction(nu)
    a = g.adjacency_matrix(dtype=object) * nu.denominator
    for i in range(g.n):
        a[i, i] -= nu.numerator * g.degree(i)
    return integer_nullity(a)


def laplacian_nullity(g: Graph, lam: Fraction | int) -> int:
    """Multiplicity of ``lam`` as a normalised-Laplacian eigenvalue."""
    return random_walk_nullity(g, 1 - Fraction(lam))


def quadratic_pair_nullity(g: Graph, s: Fraction, q: Fraction) -> int:
    """Nullity of ``P^2 - sP + qI`` for ``P = D^-1 A``, computed as ``A D^-1 A - sA + qD``."""
    s, q = Fraction(s), Fraction(q)
    degs = g.degrees
    lcm_deg = math.lcm(*degs)
    a = g.adjacency_matrix(dtype=np.int64)
    inv_d = np.array([lcm_deg // d for d in degs], dtype=object)
    ada = (a.astype(object) * inv_d) @ a.astype(object)        # lcm_deg * A D^-1 A
    m = ada * (s.denominator * q.denominator)
    m = m - a.astype(object) * (s.numerator * q.denominator * lcm_deg)
    for i in range(g.n):
        m[i, i] += q.numerator * s.denominator * lcm_deg * degs[i]
    return integer_nullity(m)


def _near_rational(x: float, max_den: int, tol: float = 1e-9) -> Optional[Fraction]:
    q = Fraction(x).limit_denominator(max_den)
    return q if abs(float(q) - x) < tol else None


def _is_rational_square(q: Fraction) -> bool:
    return all(math.isqrt(x) ** 2 == x for x in (q.numerator, q.denominator))


def identify_random_walk_eigenvalue(g: Graph, nu: float, spectrum: list[float]) -> Optional[QuadraticSurd]:
    """Certified exact form of ``nu`` (eigenvalue of ``D^-1 A``) if it is rational or quadratic."""
    degs = g.degrees
    max_den = math.lcm(*degs)
    cand = _near_rational(nu, max_den)
    if cand is not None and random_walk_nullity(g, cand) > 0:
        return QuadraticSurd(cand)
    tried = set()
    for other in spectrum:
        if abs(other - nu) < CLUSTER_GAP:
            continue
        s = _near_rational(nu + other, max_den * max_den)
        q = _near_rational(nu * other, max_den * max_den)
        if s is None or q is None or (s, q) in tried:
            continue
        tried.add((s, q))
        disc = s * s - 4 * q
        if disc <= 0 or _is_rational_square(disc):
            continue
        # the exact certificate comes first; building the surd factors disc
        if quadratic_pair_nullity(g, s, q) == 0:
            continue
        root = QuadraticSurd.sqrt(disc)
        hi = (s + root) / 2
        lo = (s - root) / 2
        pick = hi if abs(float(hi) - nu) < abs(float(lo) - nu) else lo
        if abs(float(pick) - nu) <= 1e-9:
            return pick
    return None


# ---------------------------------------------------------------------------
# route 1: dense eigensolver

def adjacency_spectrum(g: Graph, exact: bool = True) -> SpectrumReport:
    g.require_connected()
    if g.n < 2:
        raise GraphError("spectrum needs at least two vertices")
    a = g.adjacency_matrix(dtype=float)
    adjacency = sorted(_eigh_checked(a).tolist(), reverse=True)
    d = regular_degree(g)
    if d is not None:
        nu = [t / d for t in adjacency]
    else:
        inv = 1.0 / np.sqrt(np.array(g.degrees, dtype=float))
        nu = sorted(_eigh_checked(a * inv[:, None] * inv[None, :]).tolist(), reverse=True)
    laplacian = sorted(1.0 - x for x in nu)
    report = SpectrumReport(adjacency, laplacian, adjacency[1], laplacian[1], d)
    if exact:
        nu1 = identify_random_walk_eigenvalue(g, nu[1], nu)
        if nu1 is not None:
            report.exact_lambda1 = 1 - nu1
            report.certified = True
    return report


# ---------------------------------------------------------------------------
# route 2: strongly regular closed form

def srg_closed_form(params: AmplyParams) -> tuple[QuadraticSurd, QuadraticSurd]:
    """Exact ``(lambda_1, lambda_{n-1})`` of a strongly regular graph from its parameters."""
    n, d, alpha, beta = params.as_tuple()
    root = QuadraticSurd.sqrt((alpha - beta) ** 2 + 4 * (d - beta))
    lam1 = 1 - (root + (alpha - beta)) / (2 * d)
    lam_last = 1 - (-root + (alpha - beta)) / (2 * d)
    return lam1, lam_last


def srg_eigenvalues(params: AmplyParams) -> tuple[QuadraticSurd, QuadraticSurd]:
    """The two non-principal adjacency eigenvalues ``(r, s)`` with ``r > s``."""
    n, d, alpha, beta = params.as_tuple()
    root = QuadraticSurd.sqrt((alpha - beta) ** 2 + 4 * (d - beta))
    return (root + (alpha - beta)) / 2, (-root + (alpha - beta)) / 2


# ---------------------------------------------------------------------------
# route 3: intersection matrix of a distance-regular graph

@dataclass
class DrgAnalysis:
    array: IntersectionArray
    eigenvalues: list[float]                 # distinct, descending, D+1 of them
    theta1: float
    b_plus: Optional[float]                  # undefined for complete graphs
    theta1_exact: Optional[QuadraticSurd] = None
    b_plus_exact: Optional[QuadraticSurd] = None

    @property
    def lambda1(self) -> float:
        return 1 - self.theta1 / self.array.degree

    @property
    def lambda1_exact(self) -> Optional[QuadraticSurd]:
        if self.theta1_exact is None:
            return None
        return 1 - self.theta1_exact / self.array.degree


def intersection_charpoly(ia: IntersectionArray) -> list[int]:
    """Integer coefficients (highest degree first) of the intersection matrix's characteristic polynomial."""
    prev, cur = [1], [1, -ia.a(0)]
    for k in range(1, ia.diameter + 1):
        shifted = cur + [0]
        scaled = [0] * len(shifted)
        for i, c in enumerate(cur):
            scaled[i + 1] += ia.a(k) * c
        back = [0, 0] + [ia.b_(k - 1) * ia.c_(k) * c for c in prev]
        prev, cur = cur, [s - t - u for s, t, u in zip(shifted, scaled, back)]
    return cur


def _poly_eval(coeffs: list[int], x: int) -> int:
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _poly_divisible(coeffs: list[int], divisor: list[int]) -> bool:
    """Exact divisibility by a monic integer polynomial."""
    rem = list(coeffs)
    for i in range(len(rem) - len(divisor) + 1):
        f = rem[i]
        if f:
            for j, c in enumerate(divisor):
                rem[i + j] -= f * c
    return not any(rem)


def drg_spectrum(ia: IntersectionArray) -> DrgAnalysis:
    D = ia.diameter
    diag = [ia.a(i) for i in range(D + 1)]
    off = [math.sqrt(ia.b_(i) * ia.c_(i + 1)) for i in range(D)]
    t = np.diag(np.array(diag, dtype=float)) + np.diag(off, 1) + np.diag(off, -1)
    eig = sorted(_eigh_checked(t).tolist(), reverse=True)
    distinct = [v for v, _ in cluster(eig, CLUSTER_GAP)]
    if len(distinct) != D + 1:
        raise SpectrumError(f"expected {D + 1} distinct eigenvalues, found {len(distinct)}")
    theta1 = distinct[1] if D >= 1 else distinct[0]
    analysis = DrgAnalysis(ia, distinct, theta1, ia.b_(1) / (theta1 + 1) if D >= 2 else None)
    poly = intersection_charpoly(ia)
    exact = None
    k = round(theta1)
    if abs(k - theta1) < 1e-9 and _poly_eval(poly, k) == 0:
        exact = QuadraticSurd(Fraction(k))
    else:
        for other in distinct:
            if abs(other - theta1) < CLUSTER_GAP:
                continue
            s, q = round(theta1 + other), round(theta1 * other)
            if abs(s - theta1 - other) > 1e-9 or abs(q - theta1 * other) > 1e-9:
                continue
            root = QuadraticSurd.sqrt(s * s - 4 * q) if s * s - 4 * q > 0 else None
            if root is None or root.is_rational or not _poly_divisible(poly, [1, -s, q]):
                continue
            cand = (root + s) / 2 if theta1 > other else (-root + s) / 2
            exact = cand
            break
    if exact is not None:
        analysis.theta1_exact = exact
        if ia.diameter >= 2:
            analysis.b_plus_exact = QuadraticSurd(Fraction(ia.b_(1))) / (exact + 1)
    return analysis


# ---------------------------------------------------------------------------
# route 4: line graphs of regular graphs

def line_graph_spectrum(host: SpectrumReport, host_n: int, host_m: int, host_d: int) -> SpectrumReport:
    """Adjacency spectrum of the line graph of a connected ``host_d``-regular host."""
    if host_d < 2:
        raise GraphError("line-graph transfer needs a host of degree at least 2")
    if len(host.adjacency) != host_n:
        raise GraphError("host spectrum length does not match host_n")
    shift = host_d - 2
    adjacency = sorted([mu + shift for mu in host.adjacency] + [-2.0] * (host_m - host_n), reverse=True)
    ld = 2 * host_d - 2
    laplacian = sorted(1 - t / ld for t in adjacency)
    report = SpectrumReport(adjacency, laplacian, adjacency[1], laplacian[1], ld)
    if host.exact_lambda1 is not None:
        host_theta1 = host_d - host_d * host.exact_lambda1
        theta1 = host_theta1 + shift
        if host_m > host_n and theta1 < -2:
            theta1 = QuadraticSurd(Fraction(-2))
        report.exact_lambda1 = 1 - theta1 / ld
        report.certified = host.certified
        report.notes.append("exact value transferred from the host")
    return report


def line_graph_lambda1_formula(host_degree: int) -> QuadraticSurd:
    """``lambda_1`` of the line graph of a Moore graph of degree ``host_degree``."""
    d = host_degree
    return (2 * d + 1 - QuadraticSurd.sqrt(4 * d - 3)) / (4 * d - 4)
