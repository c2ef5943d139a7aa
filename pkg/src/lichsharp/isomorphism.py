"""Small-graph isomorphism by colour refinement plus individualisation backtracking.

Meant for graphs of up to a few hundred vertices; exponential in the worst case.
"""

from __future__ import annotations

from .graph import Graph


def _refine(graphs: tuple[Graph, Graph], colours: tuple[list[int], list[int]]):
    """Joint 1-WL refinement so colour ids are comparable across both graphs."""
    cg, ch = list(colours[0]), list(colours[1])
    ncls = len(set(cg) | set(ch))
    while True:
        sig_g = [(cg[v], tuple(sorted(cg[w] for w in graphs[0].adj[v]))) for v in range(graphs[0].n)]
        sig_h = [(ch[v], tuple(sorted(ch[w] for w in graphs[1].adj[v]))) for v in range(graphs[1].n)]
        ids = {s: i for i, s in enumerate(sorted(set(sig_g) | set(sig_h)))}
        cg = [ids[s] for s in sig_g]
        ch = [ids[s] for s in sig_h]
        if len(ids) == ncls:
            return cg, ch
        ncls = len(ids)


def _histogram(colours: list[int]) -> list[tuple[int, int]]:
    counts: dict[int, int] = {}
    for c in colours:
        counts[c] = counts.get(c, 0) + 1
    return sorted(counts.items())


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """A vertex map ``g -> h`` preserving adjacency, or ``None``."""
    if g.n != h.n or g.m != h.m or sorted(g.degrees) != sorted(h.degrees):
        return None

    def search(cg: list[int], ch: list[int]) -> list[int] | None:
        cg, ch = _refine((g, h), (cg, ch))
        if _histogram(cg) != _histogram(ch):
            return None
        hist = _histogram(cg)
        target = next((c for c, k in hist if k > 1), None)
        if target is None:
            where = {c: v for v, c in enumerate(ch)}
            mapping = [where[c] for c in cg]
            if all(h.has_edge(mapping[u], mapping[v]) for u, v in g.edges()):
                return mapping
            return None
        v = cg.index(target)
        fresh = max(max(cg), max(ch)) + 1
        cg2 = list(cg)
        cg2[v] = fresh
        for w in (w for w, c in enumerate(ch) if c == target):
            ch2 = list(ch)
            ch2[w] = fresh
            found = search(cg2, ch2)
            if found is not None:
                return found
        return None

    return search([0] * g.n, [0] * h.n)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None
