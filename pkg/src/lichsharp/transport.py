"""Exact optimal transport on graphs and Lin-Lu-Yau edge curvature.

All masses are :class:`fractions.Fraction`.  ``wasserstein`` moves only the
signed difference of the two measures (the Kantorovich-Rubinstein form of W1
depends on nothing else), then restores the mass that stays in place when it
assembles the full plan.  Every call is audited: marginals, plan cost, and a
1-Lipschitz vertex potential whose pairing with ``mu2 - mu1`` equals the cost.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exact import fmt
from .graph import DisconnectedGraphError, Graph, GraphError
from .mincost import solve_transportation

Measure = dict[int, Fraction]


class OptimalityError(AssertionError):
    """An internal optimality or certificate check failed."""


@dataclass
class TransportPlan:
    entries: dict[tuple[int, int], Fraction]
    cost: Fraction
    # 1-Lipschitz potential on the union of both supports
    potential: dict[int, int] = field(default_factory=dict)


def measure_mu(g: Graph, x: int, p: Fraction | int) -> Measure:
    """Lazy random-walk measure: ``p`` at ``x``, ``(1-p)/deg(x)`` on each neighbour."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise GraphError(f"idleness {p} outside [0, 1]")
    deg = g.degree(x)
    if deg == 0:
        raise GraphError(f"vertex {x} is isolated")
    mu: Measure = {}
    if p:
        mu[x] = p
    if p != 1:
        share = (1 - p) / deg
        for w in g.adj[x]:
            mu[w] = share
    return mu


def _check_measure(g: Graph, mu: Mapping[int, Fraction]) -> None:
    if sum(mu.values()) != 1:
        raise GraphError(f"measure has total mass {sum(mu.values())}")
    for v, q in mu.items():
        if not 0 <= v < g.n:
            raise GraphError(f"measure supported outside the graph at {v}")
        if q < 0:
            raise GraphError(f"negative mass at {v}")


def wasserstein(g: Graph, mu1: Mapping[int, Fraction], mu2: Mapping[int, Fraction],
                check: bool = True) -> tuple[Fraction, TransportPlan]:
    """Exact W1 between two probability measures with an optimal plan."""
    mu1 = {v: Fraction(q) for v, q in mu1.items() if q}
    mu2 = {v: Fraction(q) for v, q in mu2.items() if q}
    if check:
        _check_measure(g, mu1)
        _check_measure(g, mu2)
    dist = g.distances
    support = sorted(set(mu1) | set(mu2))
    for v in support[1:]:
        if dist[support[0], v] < 0:
            raise DisconnectedGraphError(support[0], v)

    scale = 1
    for q in (*mu1.values(), *mu2.values()):
        scale = math.lcm(scale, q.denominator)
    sources, supply, sinks, demand = [], [], [], []
    for v in support:
        diff = (mu1.get(v, 0) - mu2.get(v, 0)) * scale
        if diff > 0:
            sources.append(v)
            supply.append(int(diff))
        elif diff < 0:
            sinks.append(v)
            demand.append(int(-diff))

    cost_rows = [[int(dist[s, t]) for t in sinks] for s in sources]
    sol = solve_transportation(supply, demand, cost_rows)
    w1 = Fraction(sol.cost, scale)

    entries: dict[tuple[int, int], Fraction] = {}
    for v in support:
        stay = min(mu1.get(v, 0), mu2.get(v, 0))
        if stay:
            entries[(v, v)] = stay
    for (i, j), f in sol.flow.items():
        entries[(sources[i], sinks[j])] = Fraction(f, scale)

    potential = {}
    for w in support:
        potential[w] = min((sol.u[i] + int(dist[s, w]) for i, s in enumerate(sources)), default=0)
    plan = TransportPlan(entries, w1, potential)
    if check:
        audit_plan(g, mu1, mu2, plan)
    return w1, plan


def audit_plan(g: Graph, mu1: Mapping[int, Fraction], mu2: Mapping[int, Fraction],
               plan: TransportPlan) -> None:
    """Re-check a plan: exact marginals, cost, and a zero duality gap."""
    dist = g.distances
    rows: dict[int, Fraction] = {}
    cols: dict[int, Fraction] = {}
    total = Fraction(0)
    for (a, b), q in plan.entries.items():
        if q < 0:
            raise OptimalityError(f"negative plan entry at {(a, b)}")
        rows[a] = rows.get(a, 0) + q
        cols[b] = cols.get(b, 0) + q
        total += q * int(dist[a, b])
    if {k: v for k, v in rows.items() if v} != {k: v for k, v in mu1.items() if v}:
        raise OptimalityError("plan rows do not reproduce the source measure")
    if {k: v for k, v in cols.items() if v} != {k: v for k, v in mu2.items() if v}:
        raise OptimalityError("plan columns do not reproduce the target measure")
    if total != plan.cost:
        raise OptimalityError(f"plan cost {total} != reported {plan.cost}")
    f = plan.potential
    pts = sorted(f)
    for a in pts:
        for b in pts:
            if f[b] - f[a] > dist[a, b]:
                raise OptimalityError(f"potential is not 1-Lipschitz on ({a}, {b})")
    dual = sum(f[w] * (mu2.get(w, 0) - mu1.get(w, 0)) for w in pts)
    if dual != plan.cost:
        raise OptimalityError(f"duality gap: primal {plan.cost}, dual {dual}")


def kappa_p(g: Graph, x: int, y: int, p: Fraction | int) -> Fraction:
    """``1 - W1(mu_x^p, mu_y^p) / d(x, y)``."""
    if x == y:
        raise GraphError("kappa_p needs two distinct vertices")
    d = int(g.distances[x, y])
    if d < 0:
        raise DisconnectedGraphError(x, y)
    w1, _ = wasserstein(g, measure_mu(g, x, p), measure_mu(g, y, p))
    return 1 - w1 / d


@dataclass(frozen=True)
class Certificate:
    """Two samples ``(p, kappa_p)`` that are collinear with ``(1, 0)``."""

    first: tuple[Fraction, Fraction]
    second: tuple[Fraction, Fraction]

    def slopes(self) -> tuple[Fraction, Fraction]:
        return tuple(k / (1 - p) for p, k in (self.first, self.second))


def certificate_points(dx: int, dy: int) -> tuple[Fraction, Fraction]:
    L = math.lcm(dx, dy)
    return Fraction(L, L + 1), Fraction(2 * L + 1, 2 * L + 2)


def lly_curvature(g: Graph, x: int, y: int) -> tuple[Fraction, Certificate]:
    """Exact Lin-Lu-Yau curvature of the edge ``xy`` with its linearity certificate."""
    if not g.has_edge(x, y):
        raise GraphError(f"({x}, {y}) is not an edge")
    p1, p2 = certificate_points(g.degree(x), g.degree(y))
    cert = Certificate((p1, kappa_p(g, x, y, p1)), (p2, kappa_p(g, x, y, p2)))
    s1, s2 = cert.slopes()
    if s1 != s2:
        raise OptimalityError(
            f"kappa_p is not linear near p=1 on edge ({x}, {y}): slopes {s1} at {p1}, {s2} at {p2}"
        )
    return s1, cert


# ---------------------------------------------------------------------------
# whole-graph reports

def edge_orbits(g: Graph, automorphisms: Sequence[Sequence[int]]) -> list[list[tuple[int, int]]]:
    """Edge orbits under the group generated by ``automorphisms`` (each one verified)."""
    edges = g.edges()
    index = {e: i for i, e in enumerate(edges)}
    for perm in automorphisms:
        if sorted(perm) != list(range(g.n)):
            raise GraphError("automorphism generator is not a permutation")
        for u, v in edges:
            if not g.has_edge(perm[u], perm[v]):
                raise GraphError(f"map does not preserve edge ({u}, {v})")
    parent = list(range(len(edges)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for perm in automorphisms:
        for i, (u, v) in enumerate(edges):
            a, b = perm[u], perm[v]
            j = index[(a, b) if a < b else (b, a)]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    orbits: dict[int, list[tuple[int, int]]] = {}
    for i, e in enumerate(edges):
        orbits.setdefault(find(i), []).append(e)
    return [orbits[k] for k in sorted(orbits)]


@dataclass
class CurvatureReport:
    kappa: dict[tuple[int, int], Fraction]
    certificates: dict[tuple[int, int], Certificate]
    kappa_min: Fraction
    kappa_max: Fraction
    # representative edge for each edge when an orbit reduction was used
    computed_from: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)

    def argmin(self) -> tuple[int, int]:
        return min(self.kappa, key=lambda e: (self.kappa[e], e))

    def to_json(self) -> str:
        return json.dumps(
            {
                "kappa_min": fmt(self.kappa_min),
                "kappa_max": fmt(self.kappa_max),
                "edges": [
                    {
                        "u": u,
                        "v": v,
                        "kappa": fmt(k),
                        "certificate": [
                            [fmt(p), fmt(kp)] for p, kp in (self.certificates[(u, v)].first,
                                                            self.certificates[(u, v)].second)
                        ],
                    }
                    for (u, v), k in sorted(self.kappa.items())
                ],
            },
            indent=2,
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u", "v", "numerator", "denominator"])
        for (u, v), k in sorted(self.kappa.items()):
            w.writerow([u, v, k.numerator, k.denominator])
        return buf.getvalue()


def _curvature_chunk(args):
    g, edges = args
    return [(e, *lly_curvature(g, *e)) for e in edges]


def default_workers() -> int:
    env = os.environ.get("LICHSHARP_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def curvature_report(g: Graph, automorphisms: Sequence[Sequence[int]] | None = None,
                     workers: int = 1) -> CurvatureReport:
    """Exact curvature of every edge.

    With ``automorphisms`` the edges are grouped into orbits and one
    representative per orbit is solved; curvature is an isomorphism invariant.
    """
    g.require_connected()
    if g.m == 0:
        raise GraphError("graph has no edges")
    if automorphisms:
        orbits = edge_orbits(g, automorphisms)
    else:
        orbits = [[e] for e in g.edges()]
    reps = [orb[0] for orb in orbits]
    if workers > 1 and len(reps) > 1:
        chunks = [reps[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            results = [r for part in pool.map(_curvature_chunk, [(g, c) for c in chunks]) for r in part]
        results.sort()
    else:
        results = _curvature_chunk((g, reps))
    solved = {e: (k, cert) for e, k, cert in results}
    kappa, certs, source = {}, {}, {}
    for orb in orbits:
        k, cert = solved[orb[0]]
        for e in orb:
            kappa[e] = k
            certs[e] = cert
            source[e] = orb[0]
    values = kappa.values()
    return CurvatureReport(kappa, certs, min(values), max(values), source)


def verify_simple_plan(g: Graph, x: int, y: int, p: Fraction | int) -> bool:
    """Whether fixing the stay-in-place mass and ``pi(x, y) = p - (1-p)/deg(y)`` is still optimal."""
    p = Fraction(p)
    if not g.has_edge(x, y):
        raise GraphError(f"({x}, {y}) is not an edge")
    dx, dy = g.degree(x), g.degree(y)
    if dx < dy:
        raise GraphError(f"needs deg(x) >= deg(y), got {dx} < {dy}")
    if not Fraction(1, 1 + dy) <= p <= 1:
        raise GraphError(f"p={p} below 1/(1+deg(y))")
    mu_x, mu_y = measure_mu(g, x, p), measure_mu(g, y, p)
    best, _ = wasserstein(g, mu_x, mu_y)

    fixed_xy = p - (1 - p) / dy
    rest_x = {v: q - min(q, mu_y.get(v, 0)) for v, q in mu_x.items()}
    rest_y = {v: q - min(q, mu_x.get(v, 0)) for v, q in mu_y.items()}
    rest_x[x] -= fixed_xy
    rest_y[y] -= fixed_xy
    if rest_x[x] < 0 or rest_y[y] < 0:
        return False
    rest_x = {v: q for v, q in rest_x.items() if q}
    rest_y = {v: q for v, q in rest_y.items() if q}
    # the residual supports are disjoint, so no further mass can stay in place
    total = sum(rest_x.values())
    if total != sum(rest_y.values()):
        return False
    restricted = fixed_xy * int(g.distances[x, y])
    if total:
        w, _ = wasserstein(g, {v: q / total for v, q in rest_x.items()},
                           {v: q / total for v, q in rest_y.items()})
        restricted += w * total
    return restricted == best
