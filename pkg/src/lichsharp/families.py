"""Deterministic generators for the named graphs and families.

Labelings are part of the contract (tests rely on them):

* ``petersen``: outer pentagon ``0..4``, spokes ``i -- i+5``, inner
  pentagram on ``5..9``.
* ``hamming(d, n)``: vertex index = base-``n`` number of the word, most
  significant coordinate first.
* ``johnson(n, k)``: ``itertools.combinations(range(n), k)`` order.
* ``demi_cube(n)``: even-weight words in increasing integer value.
* ``cocktail_party(n)``: ``2i`` and ``2i+1`` are the non-adjacent pairs.
* ``shrikhande``: ``(a, b) in Z4 x Z4`` is index ``4a + b``.
* ``gosset``: ``(S, sign)`` is index ``2 * rank(S) + (sign == -)`` with
  ``rank`` the combinations order of 2-subsets of ``range(8)``.
* ``hoffman_singleton``: pentagon vertex ``P_h(j)`` is ``5h + j``, pentagram
  vertex ``Q_i(j)`` is ``25 + 5i + j``.
* ``doob(n, m)``: left fold of cartesian products, ``n`` copies of ``K4``
  followed by ``m`` copies of the Shrikhande graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Iterable, Sequence

from .graph import Graph, GraphError, build, cartesian_product, line_graph, local_graph

FAMILY_ARITY: dict[str, int] = {
    "complete": 1,
    "cycle": 1,
    "cocktail_party": 1,
    "hamming": 2,
    "johnson": 2,
    "demi_cube": 1,
    "triangular": 1,
    "petersen": 0,
    "icosahedron": 0,
    "shrikhande": 0,
    "clebsch": 0,
    "schlafli": 0,
    "gosset": 0,
    "hoffman_singleton": 0,
    "doob": 2,
    "dodecahedron": 0,
    "heawood": 0,
    "chang": 1,
}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        if self.family not in FAMILY_ARITY:
            raise GraphError(f"unknown family {self.family!r}")
        if len(self.params) != FAMILY_ARITY[self.family]:
            raise GraphError(
                f"{self.family} takes {FAMILY_ARITY[self.family]} parameter(s), got {len(self.params)}"
            )
        _check_range(self.family, self.params)

    @property
    def label(self) -> str:
        if not self.params:
            return self.family
        return f"{self.family}({','.join(map(str, self.params))})"


def _check_range(family: str, p: tuple[int, ...]) -> None:
    ok = {
        "complete": lambda: p[0] >= 1,
        "cycle": lambda: p[0] >= 3,
        "cocktail_party": lambda: p[0] >= 2,
        "hamming": lambda: p[0] >= 1 and p[1] >= 2,
        "johnson": lambda: 1 <= p[1] <= p[0] - 1,
        "demi_cube": lambda: p[0] >= 2,
        "triangular": lambda: p[0] >= 4,
        "doob": lambda: p[0] >= 0 and p[1] >= 0 and p[0] + p[1] >= 1,
        "chang": lambda: p[0] in (1, 2, 3),
    }.get(family, lambda: True)()
    if not ok:
        raise GraphError(f"parameters {p} out of range for {family}")


# ---------------------------------------------------------------------------
# individual constructions

def complete(n: int) -> Graph:
    return build(n, itertools.combinations(range(n), 2))


def cycle(n: int) -> Graph:
    return build(n, [(i, (i + 1) % n) for i in range(n)])


def cocktail_party(n: int) -> Graph:
    return build(2 * n, [(u, v) for u, v in itertools.combinations(range(2 * n), 2) if u // 2 != v // 2])


def hamming(d: int, n: int) -> Graph:
    edges = []
    for idx in range(n ** d):
        for pos in range(d):
            w = n ** pos
            digit = (idx // w) % n
            for other in range(digit + 1, n):
                edges.append((idx, idx + (other - digit) * w))
    return build(n ** d, edges)


def johnson(n: int, k: int) -> Graph:
    verts = list(itertools.combinations(range(n), k))
    index = {frozenset(s): i for i, s in enumerate(verts)}
    edges = []
    for i, s in enumerate(verts):
        inside = set(s)
        for a in s:
            for b in range(n):
                if b not in inside:
                    j = index[frozenset(inside - {a} | {b})]
                    if i < j:
                        edges.append((i, j))
    return build(len(verts), edges)


def demi_cube(n: int) -> Graph:
    words = [w for w in range(2 ** n) if bin(w).count("1") % 2 == 0]
    index = {w: i for i, w in enumerate(words)}
    edges = []
    for w in words:
        for a, b in itertools.combinations(range(n), 2):
            u = w ^ (1 << a) ^ (1 << b)
            if w < u:
                edges.append((index[w], index[u]))
    return build(len(words), edges)


def triangular(n: int) -> Graph:
    return johnson(n, 2)


def kneser(n: int, k: int) -> Graph:
    verts = list(itertools.combinations(range(n), k))
    return build(
        len(verts),
        [(i, j) for (i, s), (j, t) in itertools.combinations(enumerate(verts), 2) if not set(s) & set(t)],
    )


def petersen() -> Graph:
    # outer pentagon 0..4, spokes i -- i+5, inner pentagram on 5..9
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build(10, edges)


def icosahedron() -> Graph:
    # 0 apex, 1..5 upper ring, 6..10 lower ring, 11 antipode
    edges = []
    for i in range(5):
        up, up_next = 1 + i, 1 + (i + 1) % 5
        lo, lo_next = 6 + i, 6 + (i + 1) % 5
        edges += [(0, up), (up, up_next), (lo, lo_next), (11, lo), (up, lo), (up, lo_next)]
    return build(12, edges)


def shrikhande() -> Graph:
    steps = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)]
    edges = [
        (4 * a + b, 4 * ((a + da) % 4) + (b + db) % 4)
        for a in range(4) for b in range(4) for da, db in steps
    ]
    return build(16, edges)


def clebsch() -> Graph:
    return demi_cube(5)


def gosset() -> Graph:
    pairs = list(itertools.combinations(range(8), 2))
    edges = []
    for (i, s), (j, t) in itertools.combinations(enumerate(pairs), 2):
        meet = len(set(s) & set(t))
        if meet == 1:
            edges += [(2 * i, 2 * j), (2 * i + 1, 2 * j + 1)]
        elif meet == 0:
            edges += [(2 * i, 2 * j + 1), (2 * i + 1, 2 * j)]
    return build(56, edges)


def schlafli() -> Graph:
    return local_graph(gosset(), 0)


def hoffman_singleton() -> Graph:
    edges = []
    for h in range(5):
        for j in range(5):
            edges.append((5 * h + j, 5 * h + (j + 1) % 5))
            edges.append((25 + 5 * h + j, 25 + 5 * h + (j + 2) % 5))
            for i in range(5):
                edges.append((5 * h + j, 25 + 5 * i + (h * i + j) % 5))
    return build(50, edges)


def doob(n: int, m: int) -> Graph:
    factors = [complete(4)] * n + [shrikhande()] * m
    return reduce(cartesian_product, factors)


def _lcf(n: int, shifts: Sequence[int]) -> Graph:
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, (i + shifts[i % len(shifts)]) % n) for i in range(n)]
    return build(n, edges)


def dodecahedron() -> Graph:
    return _lcf(20, [10, 7, 4, -4, -7, 10, -4, 7, -7, 4])


def heawood() -> Graph:
    return _lcf(14, [5, -5])


# ---------------------------------------------------------------------------
# Seidel switching and the Chang graphs

def seidel_switch(g: Graph, subset: Iterable[int]) -> Graph:
    """Complement every pair with exactly one end in ``subset``."""
    s = set(subset)
    for v in s:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(g.n), 2)
        if g.has_edge(u, v) != ((u in s) != (v in s))
    ]
    return build(g.n, edges)


CHANG_SWITCHING_SUBGRAPHS: dict[int, list[tuple[int, int]]] = {
    1: [(0, 1), (2, 3), (4, 5), (6, 7)],
    2: [(i, (i + 1) % 8) for i in range(8)],
    3: [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (6, 7), (3, 7)],
}


def triangular_vertices(n: int, k_edges: Iterable[tuple[int, int]]) -> list[int]:
    """Vertices of ``T(n)`` corresponding to a set of edges of ``K_n``."""
    index = {frozenset(s): i for i, s in enumerate(itertools.combinations(range(n), 2))}
    return sorted(index[frozenset(e)] for e in k_edges)


def chang(i: int) -> Graph:
    """Switch ``T(8)`` on a perfect matching (1), an 8-cycle (2) or a triangle plus pentagon (3) of ``K8``."""
    _check_range("chang", (i,))
    return seidel_switch(triangular(8), triangular_vertices(8, CHANG_SWITCHING_SUBGRAPHS[i]))


_BUILDERS: dict[str, Callable[..., Graph]] = {
    "complete": complete,
    "cycle": cycle,
    "cocktail_party": cocktail_party,
    "hamming": hamming,
    "johnson": johnson,
    "demi_cube": demi_cube,
    "triangular": triangular,
    "petersen": petersen,
    "icosahedron": icosahedron,
    "shrikhande": shrikhande,
    "clebsch": clebsch,
    "schlafli": schlafli,
    "gosset": gosset,
    "hoffman_singleton": hoffman_singleton,
    "doob": doob,
    "dodecahedron": dodecahedron,
    "heawood": heawood,
    "chang": chang,
}


def generate(spec: FamilySpec | str, *params: int) -> Graph:
    if isinstance(spec, str):
        spec = FamilySpec(spec, params)
    return _BUILDERS[spec.family](*spec.params)


def generate_line(spec: FamilySpec | str, *params: int) -> Graph:
    return line_graph(generate(spec, *params))


# ---------------------------------------------------------------------------
# automorphism generators (verified by the consumer, see transport.edge_orbits)

def _sym_generators(n: int) -> list[list[int]]:
    if n < 2:
        return []
    swap = list(range(n))
    swap[0], swap[1] = 1, 0
    return [swap, [(i + 1) % n for i in range(n)]]


def automorphism_generators(spec: FamilySpec | str, *params: int) -> list[list[int]]:
    """Generators of a vertex-permutation group acting on the family's labeling.

    Only families whose symmetry is cheap to write down are covered; an empty
    list means "no symmetry supplied".
    """
    if isinstance(spec, str):
        spec = FamilySpec(spec, params)
    fam, p = spec.family, spec.params
    if fam == "complete":
        return _sym_generators(p[0])
    if fam == "hamming":
        d, n = p
        gens = []
        for sym in _sym_generators(n):
            # relabel the least significant coordinate
            gens.append([idx - idx % n + sym[idx % n] for idx in range(n ** d)])
        for perm in _sym_generators(d):
            def move(idx: int, perm=perm) -> int:
                digits = [(idx // n ** k) % n for k in range(d)]
                return sum(digits[k] * n ** perm[k] for k in range(d))
            gens.append([move(idx) for idx in range(n ** d)])
        return gens
    if fam in ("johnson", "triangular"):
        n, k = (p[0], 2) if fam == "triangular" else p
        verts = list(itertools.combinations(range(n), k))
        index = {s: i for i, s in enumerate(verts)}
        return [
            [index[tuple(sorted(perm[a] for a in s))] for s in verts]
            for perm in _sym_generators(n)
        ]
    if fam == "cocktail_party":
        n = p[0]
        gens = [[v ^ 1 if v < 2 else v for v in range(2 * n)]]
        gens += [[2 * perm[v // 2] + v % 2 for v in range(2 * n)] for perm in _sym_generators(n)]
        return gens
    if fam in ("demi_cube", "clebsch"):
        n = p[0] if fam == "demi_cube" else 5
        words = [w for w in range(2 ** n) if bin(w).count("1") % 2 == 0]
        index = {w: i for i, w in enumerate(words)}
        gens = [[index[w ^ 3] for w in words]]
        for perm in _sym_generators(n):
            gens.append([index[sum(1 << perm[b] for b in range(n) if w >> b & 1)] for w in words])
        return gens
    if fam == "gosset":
        pairs = list(itertools.combinations(range(8), 2))
        index = {s: i for i, s in enumerate(pairs)}
        gens = [[v ^ 1 for v in range(56)]]
        for perm in _sym_generators(8):
            gens.append([2 * index[tuple(sorted(perm[a] for a in pairs[v // 2]))] + v % 2 for v in range(56)])
        return gens
    return []
