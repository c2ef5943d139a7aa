"""Amply regular parameters, intersection arrays, the Terwilliger property and reduced graphs.

Negative answers are returned as :class:`Rejection` objects carrying a witness
so that a failed table row can be traced back to a concrete vertex pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

import numpy as np

from .graph import Graph, GraphError, build, local_graph


@dataclass(frozen=True)
class Rejection:
    reason: str
    witness: tuple = ()

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class AmplyParams:
    n: int
    d: int
    alpha: int
    beta: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.d, self.alpha, self.beta)


@dataclass(frozen=True)
class IntersectionArray:
    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        if len(self.b) != len(self.c) or not self.b:
            raise GraphError("intersection array needs b_0..b_{D-1} and c_1..c_D")
        if self.c[0] != 1 or min(self.b) < 1 or min(self.c) < 1:
            raise GraphError(f"invalid intersection array {self}")
        if any(c > self.b[0] for c in self.c):
            raise GraphError(f"invalid intersection array {self}")

    @property
    def diameter(self) -> int:
        return len(self.b)

    @property
    def degree(self) -> int:
        return self.b[0]

    def a(self, i: int) -> int:
        return self.b[0] - self.b_(i) - self.c_(i)

    def b_(self, i: int) -> int:
        return self.b[i] if i < len(self.b) else 0

    def c_(self, i: int) -> int:
        return 0 if i == 0 else self.c[i - 1]

    def amply_params(self, n: int) -> AmplyParams:
        if self.diameter < 2:
            raise GraphError("complete graphs have no beta")
        return AmplyParams(n, self.b[0], self.b[0] - self.b[1] - 1, self.c[1])

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.b)) + "; " + ",".join(map(str, self.c)) + "}"


def regular_degree(g: Graph) -> int | None:
    """Common degree, or ``None`` when the graph is irregular."""
    degs = set(g.degrees)
    return degs.pop() if len(degs) == 1 else None


def common_neighbor_counts(g: Graph) -> np.ndarray:
    a = g.adjacency_matrix()
    return a @ a


def amply_params(g: Graph) -> Union[AmplyParams, Rejection]:
    g.require_connected()
    d = regular_degree(g)
    if d is None:
        degs = g.degrees
        u = degs.index(min(degs))
        return Rejection("irregular", (u, degs.index(max(degs))))
    dist = g.distances
    if dist.max() < 2:
        return Rejection("complete")
    cn = common_neighbor_counts(g)
    out = []
    for k in (1, 2):
        us, vs = np.nonzero(np.triu(dist == k, 1))
        counts = cn[us, vs]
        first = int(counts[0])
        bad = np.flatnonzero(counts != first)
        if bad.size:
            return Rejection(
                f"distance-{k} pairs disagree on common neighbours",
                ((int(us[0]), int(vs[0])), (int(us[bad[0]]), int(vs[bad[0]]))),
            )
        out.append(first)
    return AmplyParams(g.n, d, out[0], out[1])


def intersection_array(g: Graph) -> Union[IntersectionArray, Rejection]:
    g.require_connected()
    dist = g.distances.astype(np.int64)
    diam = int(dist.max())
    if diam == 0:
        return Rejection("single vertex")
    a = g.adjacency_matrix()
    # layer[k][y, x] = number of neighbours of y at distance k from x
    layer = [a @ (dist == k).astype(np.int64) for k in range(diam + 1)]
    b, c = [], []
    for i in range(diam + 1):
        mask = dist == i
        if i < diam:
            vals = layer[i + 1][mask]
            if (vals != vals[0]).any():
                y, x = np.argwhere(mask & (layer[i + 1] != vals[0]))[0]
                return Rejection(f"b_{i} not constant", (int(x), int(y)))
            b.append(int(vals[0]))
        if i > 0:
            vals = layer[i - 1][mask]
            if (vals != vals[0]).any():
                y, x = np.argwhere(mask & (layer[i - 1] != vals[0]))[0]
                return Rejection(f"c_{i} not constant", (int(x), int(y)))
            c.append(int(vals[0]))
    return IntersectionArray(tuple(b), tuple(c))


def is_terwilliger(g: Graph) -> Union[int, Rejection]:
    """``beta`` if every distance-2 pair has a common neighbourhood that is a clique of one size."""
    g.require_connected()
    dist = g.distances
    if dist.max() < 2:
        return Rejection("complete")
    a = g.adjacency_matrix()
    beta = None
    for x, y in zip(*np.nonzero(np.triu(dist == 2, 1))):
        common = np.flatnonzero(a[x] & a[y])
        if beta is None:
            beta = common.size
        if common.size != beta:
            return Rejection("common neighbourhood size varies", (int(x), int(y)))
        sub = a[np.ix_(common, common)]
        if sub.sum() != common.size * (common.size - 1):
            i, j = np.argwhere(sub + np.eye(common.size, dtype=sub.dtype) == 0)[0]
            return Rejection(
                "common neighbourhood is not a clique",
                (int(x), int(y), int(common[i]), int(common[j])),
            )
    return beta


def induced_quadrangle(g: Graph) -> tuple[int, int, int, int] | None:
    """Exhaustive search for an induced 4-cycle ``x - u - y - w - x``."""
    for x, y in itertools.combinations(range(g.n), 2):
        if g.has_edge(x, y):
            continue
        common = sorted(g.neighbor_sets[x] & g.neighbor_sets[y])
        for u, w in itertools.combinations(common, 2):
            if not g.has_edge(u, w):
                return (x, u, y, w)
    return None


def reduce_quotient(g: Graph) -> tuple[Graph, list[int]]:
    """Quotient by equal closed neighbourhoods; returns the reduced graph and class sizes.

    Classes are numbered by their smallest member.
    """
    classes: dict[frozenset[int], list[int]] = {}
    for v in range(g.n):
        classes.setdefault(g.neighbor_sets[v] | {v}, []).append(v)
    members = sorted(classes.values(), key=lambda c: c[0])
    cls = {}
    for i, group in enumerate(members):
        for v in group:
            cls[v] = i
    edges = {(cls[u], cls[v]) for u, v in g.edges() if cls[u] != cls[v]}
    return build(len(members), edges), [len(c) for c in members]


@dataclass(frozen=True)
class ReducedLocalParams:
    s: int
    n_bar: Fraction
    d_bar: Fraction
    alpha_bar: Fraction
    beta_bar: Fraction


def reduced_local_params(g: Graph, gamma: int) -> ReducedLocalParams:
    """Parameters of the reduced local graph of a vertex, with every side condition asserted."""
    params = amply_params(g)
    if not params:
        raise GraphError(f"not amply regular: {params.reason}")
    if params.beta <= 1:
        raise GraphError("needs beta > 1")
    terw = is_terwilliger(g)
    if not terw:
        raise GraphError(f"not a Terwilliger graph: {terw.reason} at {terw.witness}")
    n, d, alpha, beta = params.as_tuple()
    reduced, sizes = reduce_quotient(local_graph(g, gamma))
    if len(set(sizes)) != 1:
        raise GraphError(f"unequal equivalence classes {sorted(set(sizes))} in the local graph")
    s = sizes[0]
    n_bar = Fraction(d, s)
    d_bar = Fraction(alpha - s + 1, s)
    beta_bar = Fraction(beta - 1, s)
    alpha_bar = Fraction(
        (alpha - s + 1) * (alpha - 2 * s + 1) - (beta - 1) * (d - alpha - 1),
        s * (alpha - s + 1),
    )
    failures = []
    if any(v.denominator != 1 for v in (n_bar, d_bar, alpha_bar, beta_bar)):
        failures.append("non-integral reduced parameters")
    if not (beta == s + 1 or beta >= s * s + s + 1):
        failures.append("beta neither s+1 nor >= s^2+s+1")
    if gcd(gcd(d, alpha + 1), beta - 1) % s:
        failures.append("s does not divide gcd(d, alpha+1, beta-1)")
    if ((beta - 1) * (d - s)) % (alpha - s + 1):
        failures.append("alpha-s+1 does not divide (beta-1)(d-s)")
    if s > alpha_bar + 1:
        failures.append("s > alpha_bar + 1")
    if reduced.is_connected() and reduced.n > 1:
        got = amply_params(reduced)
        if not got or got.as_tuple() != (n_bar, d_bar, alpha_bar, beta_bar):
            failures.append(f"reduced local graph has parameters {got}")
    else:
        failures.append("reduced local graph is disconnected")
    if failures:
        raise GraphError("; ".join(failures))
    return ReducedLocalParams(s, n_bar, d_bar, alpha_bar, beta_bar)
