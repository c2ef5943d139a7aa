"""Exact transportation problem solver (primal-dual min-cost flow on integers).

Each phase runs Dijkstra on reduced costs to raise the potentials, then pushes a
maximum flow through the zero-reduced-cost arcs with BFS augmenting paths.
Every arc from a source row to a sink column is uncapacitated, so the only
residual back-arcs are the ones carrying flow.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

INF = float("inf")


@dataclass
class TransportSolution:
    cost: int
    flow: dict[tuple[int, int], int]
    # v[j] - u[i] <= cost[i][j], with equality wherever flow is positive
    u: list[int]
    v: list[int]


def solve_transportation(supply: list[int], demand: list[int], cost: list[list[int]]) -> TransportSolution:
    m, k = len(supply), len(demand)
    if sum(supply) != sum(demand):
        raise ValueError(f"unbalanced problem: supply {sum(supply)} != demand {sum(demand)}")
    if any(s < 0 for s in supply) or any(d < 0 for d in demand):
        raise ValueError("negative mass")
    for row in cost:
        if any(c < 0 for c in row):
            raise ValueError("negative cost")

    rs, rd = list(supply), list(demand)
    x = [[0] * k for _ in range(m)]
    pu, pv = [0] * m, [0] * k
    left = sum(supply)

    while left:
        # Dijkstra over rows (0..m-1) and columns (m..m+k-1), dense O(V^2)
        du = [0 if rs[i] else INF for i in range(m)]
        dv = [INF] * k
        done_u, done_v = [False] * m, [False] * k
        delta = INF
        while True:
            best, bi, is_row = INF, -1, True
            for i in range(m):
                if not done_u[i] and du[i] < best:
                    best, bi, is_row = du[i], i, True
            for j in range(k):
                if not done_v[j] and dv[j] < best:
                    best, bi, is_row = dv[j], j, False
            if bi < 0 or best >= delta:
                break
            if is_row:
                done_u[bi] = True
                row, off = cost[bi], pu[bi]
                for j in range(k):
                    if not done_v[j]:
                        nd = best + row[j] + off - pv[j]
                        if nd < dv[j]:
                            dv[j] = nd
            else:
                done_v[bi] = True
                if rd[bi]:
                    delta = best
                    break
                for i in range(m):
                    if x[i][bi] and not done_u[i] and best < du[i]:
                        du[i] = best
        if delta == INF:
            raise RuntimeError("no augmenting path in a balanced transportation problem")
        for i in range(m):
            pu[i] += min(du[i], delta)
        for j in range(k):
            pv[j] += min(dv[j], delta)

        # maximum flow on the admissible subgraph
        while left:
            parent_v = [-1] * k
            parent_u = [-2] * m
            queue = deque()
            for i in range(m):
                if rs[i]:
                    parent_u[i] = -1
                    queue.append(i)
            sink = -1
            while queue and sink < 0:
                i = queue.popleft()
                row, off = cost[i], pu[i]
                for j in range(k):
                    if parent_v[j] < 0 and row[j] + off == pv[j]:
                        parent_v[j] = i
                        if rd[j]:
                            sink = j
                            break
                        for i2 in range(m):
                            if parent_u[i2] == -2 and x[i2][j]:
                                parent_u[i2] = j
                                queue.append(i2)
            if sink < 0:
                break
            # bottleneck along the path column <- row <- column ... <- source row
            amount = rd[sink]
            j = sink
            while True:
                i = parent_v[j]
                pj = parent_u[i]
                if pj == -1:
                    amount = min(amount, rs[i])
                    break
                amount = min(amount, x[i][pj])
                j = pj
            j = sink
            while True:
                i = parent_v[j]
                x[i][j] += amount
                pj = parent_u[i]
                if pj == -1:
                    rs[i] -= amount
                    break
                x[i][pj] -= amount
                j = pj
            rd[sink] -= amount
            left -= amount

    flow = {(i, j): x[i][j] for i in range(m) for j in range(k) if x[i][j]}
    total = sum(cost[i][j] * f for (i, j), f in flow.items())
    return TransportSolution(total, flow, pu, pv)
