"""Compare exact W1 and curvature with brute-force oracles on every small connected graph.

    python scripts/small_graph_sweep.py --max-n 7
    python scripts/small_graph_sweep.py --max-n 8    # slow: 11117 graphs on eight vertices

Graphs on up to seven vertices come from the networkx atlas. Eight-vertex
graphs are grown by attaching a new vertex to every graph on seven vertices in
every possible way and keeping one representative per isomorphism class.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import networkx as nx

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from oracles import brute_w1, connected_atlas, from_networkx, potential_matrix, slope_estimate  # noqa: E402

from lichsharp.transport import lly_curvature, measure_mu, wasserstein  # noqa: E402

IDLENESS = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(5, 6))


def connected_eight():
    buckets: dict[str, list[nx.Graph]] = {}
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() != 7:
            continue
        for k in range(1, 8):
            for nbrs in combinations(range(7), k):
                g = h.copy()
                g.add_edges_from((7, v) for v in nbrs)
                if not nx.is_connected(g):
                    continue
                key = nx.weisfeiler_lehman_graph_hash(g, iterations=4)
                bucket = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(g, other) for other in bucket):
                    bucket.append(g)
    return [from_networkx(g) for bucket in buckets.values() for g in bucket]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=7, choices=range(2, 9))
    args = ap.parse_args(argv)

    graphs = connected_atlas(min(args.max_n, 7))
    if args.max_n == 8:
        graphs += connected_eight()
    start = time.perf_counter()
    edges = failures = 0
    worst = 0.0
    for g in graphs:
        pots = potential_matrix(g)
        for x, y in g.edges():
            for p in IDLENESS:
                a, b = measure_mu(g, x, p), measure_mu(g, y, p)
                if wasserstein(g, a, b)[0] != brute_w1(g, a, b, pots):
                    failures += 1
                    print(f"W1 mismatch: {g.adj} edge ({x},{y}) p={p}")
            kappa, _ = lly_curvature(g, x, y)
            gap = abs(float(kappa) - slope_estimate(g, x, y, pots))
            worst = max(worst, gap)
            if gap >= 1e-9:
                failures += 1
                print(f"slope mismatch: {g.adj} edge ({x},{y}) kappa={kappa} gap={gap:.3e}")
            edges += 1
    print(f"{len(graphs)} graphs, {edges} edges, {failures} failures, "
          f"worst slope gap {worst:.2e}, {time.perf_counter() - start:.0f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
