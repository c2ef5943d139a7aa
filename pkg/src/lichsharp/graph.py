"""Immutable simple graphs, hop metrics and the standard constructions."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

UNREACHABLE = -1


class GraphError(ValueError):
    """Invalid graph construction or an operation applied outside its domain."""


class DisconnectedGraphError(GraphError):
    def __init__(self, u: int, v: int):
        super().__init__(f"graph is disconnected: vertices {u} and {v} lie in different components")
        self.witness = (u, v)


@dataclass(frozen=True, eq=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1`` with sorted adjacency tuples.

    Use :func:`build` (or one of the constructions below) rather than calling the
    constructor directly; ``build`` canonicalises and validates the input.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        for u, row in enumerate(self.adj):
            for i, v in enumerate(row):
                if not 0 <= v < self.n:
                    raise GraphError(f"neighbor {v} of {u} out of range")
                if v == u:
                    raise GraphError(f"self-loop at {u}")
                if i and row[i - 1] >= v:
                    raise GraphError(f"adjacency row {u} not strictly increasing")
        for u, row in enumerate(self.adj):
            for v in row:
                if u not in self.neighbor_sets[v]:
                    raise GraphError(f"asymmetric adjacency: {u}->{v} without {v}->{u}")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(row) for row in self.adj)

    @cached_property
    def m(self) -> int:
        return sum(len(row) for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def degrees(self) -> list[int]:
        return [len(row) for row in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, row in enumerate(self.adj):
            a[u, list(row)] = 1
        return a

    @cached_property
    def distances(self) -> np.ndarray:
        """All-pairs hop distances; ``UNREACHABLE`` (-1) across components."""
        if self.n == 0:
            return np.zeros((0, 0), dtype=np.int32)
        rows = np.repeat(np.arange(self.n), [len(r) for r in self.adj])
        cols = np.fromiter((v for r in self.adj for v in r), dtype=np.int64, count=len(rows))
        a = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(self.n, self.n))
        far = shortest_path(a, method="D", unweighted=True, directed=False)
        d = np.where(np.isinf(far), UNREACHABLE, far).astype(np.int32)
        d.setflags(write=False)
        return d

    def is_connected(self) -> bool:
        return self.n <= 1 or bool((self.distances[0] >= 0).all())

    def require_connected(self) -> None:
        if self.n == 0:
            raise GraphError("empty graph")
        row = self.distances[0]
        far = np.flatnonzero(row < 0)
        if far.size:
            raise DisconnectedGraphError(0, int(far[0]))


def build(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Canonical graph from an edge list; duplicates collapse, loops are rejected."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


def from_adjacency_matrix(a: np.ndarray) -> Graph:
    a = np.asarray(a)
    if a.shape[0] != a.shape[1] or (a != a.T).any():
        raise GraphError("adjacency matrix must be square and symmetric")
    us, vs = np.nonzero(np.triu(a, 1))
    if np.diag(a).any():
        raise GraphError(f"self-loop at vertex {int(np.flatnonzero(np.diag(a))[0])}")
    return build(a.shape[0], zip(us.tolist(), vs.tolist()))


# ---------------------------------------------------------------------------
# metric

def bfs_row(g: Graph, x: int) -> list[int]:
    """Hop distance from ``x`` to every vertex (``UNREACHABLE`` if none)."""
    dist = [UNREACHABLE] * g.n
    dist[x] = 0
    queue = deque([x])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = du
                queue.append(w)
    return dist


def diameter(g: Graph) -> int:
    g.require_connected()
    return int(g.distances.max())


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, or ``None`` for a forest."""
    best = None
    for s in range(g.n):
        dist = [UNREACHABLE] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


# ---------------------------------------------------------------------------
# constructions

def induced(g: Graph, vertices: Iterable[int]) -> Graph:
    """Induced subgraph; vertex ``i`` of the result is the ``i``-th smallest of ``vertices``."""
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[w]) for u in keep for w in g.adj[u] if w in index and u < w]
    return build(len(keep), edges)


def local_graph(g: Graph, v: int) -> Graph:
    """Subgraph induced on the neighbors of ``v``."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    return induced(g, g.adj[v])


def complement(g: Graph) -> Graph:
    edges = [(u, w) for u in range(g.n) for w in range(u + 1, g.n) if not g.has_edge(u, w)]
    return build(g.n, edges)


def line_graph(g: Graph) -> Graph:
    """Line graph; vertex ``i`` is the ``i``-th edge of ``g.edges()``."""
    edges = g.edges()
    if not edges:
        raise GraphError("line graph of an edgeless graph")
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(edges):
        incident[u].append(i)
        incident[v].append(i)
    pairs = [(a, b) for inc in incident for i, a in enumerate(inc) for b in inc[i + 1:]]
    return build(len(edges), pairs)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product; vertex ``(a, b)`` is index ``a * h.n + b``."""
    if g.n == 0 or h.n == 0:
        raise GraphError("cartesian product needs non-empty factors")
    edges = []
    for a in range(g.n):
        for b, c in h.edges():
            edges.append((a * h.n + b, a * h.n + c))
    for a, c in g.edges():
        for b in range(h.n):
            edges.append((a * h.n + b, c * h.n + b))
    return build(g.n * h.n, edges)


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return build(offset, edges)


@dataclass(frozen=True)
class NeighborhoodSplit:
    """Neighbors of an edge ``xy`` split into common / only-x / only-y parts."""

    common: frozenset[int]
    only_x: frozenset[int]
    only_y: frozenset[int]


def neighborhood_split(g: Graph, x: int, y: int) -> NeighborhoodSplit:
    if not g.has_edge(x, y):
        raise GraphError(f"({x}, {y}) is not an edge")
    nx_, ny_ = g.neighbor_sets[x], g.neighbor_sets[y]
    common = nx_ & ny_
    return NeighborhoodSplit(common, nx_ - common - {y}, ny_ - common - {x})


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [v for v, d in enumerate(bfs_row(g, s)) if d >= 0]
        for v in comp:
            seen[v] = True
        out.append(comp)
    return out
