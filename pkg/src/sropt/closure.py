"""Maximum-weight closure of a DAG via minimum cut."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import CycleDetected


@dataclass
class FlowNetwork:
    """Directed network with integer capacities on nodes ``0..n-1``."""

    n: int
    source: int
    sink: int
    arcs: list[tuple[int, int, int]] = field(default_factory=list)

    def add_arc(self, u: int, v: int, cap: int):
        if cap < 0:
            raise ValueError(f"negative capacity on arc ({u}, {v})")
        if v == self.source or u == self.sink:
            raise ValueError("no arcs into the source or out of the sink")
        self.arcs.append((u, v, cap))


def max_flow(net: FlowNetwork) -> tuple[int, frozenset[int]]:
    """Dinic's algorithm.

    Returns the flow value and the source side of the canonical minimum cut
    (nodes reachable from the source in the final residual graph).
    """
    n = net.n
    head: list[list[int]] = [[] for _ in range(n)]
    to: list[int] = []
    cap: list[int] = []
    for u, v, c in net.arcs:
        head[u].append(len(to))
        to.append(v)
        cap.append(c)
        head[v].append(len(to))
        to.append(u)
        cap.append(0)
    s, t = net.source, net.sink
    flow = 0

    def bfs() -> list[int]:
        level = [-1] * n
        level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for a in head[u]:
                if cap[a] > 0 and level[to[a]] < 0:
                    level[to[a]] = level[u] + 1
                    q.append(to[a])
        return level

    while True:
        level = bfs()
        if level[t] < 0:
            break
        it = [0] * n
        # iterative blocking-flow search
        while True:
            path: list[int] = []
            u = s
            while u != t:
                while it[u] < len(head[u]):
                    a = head[u][it[u]]
                    if cap[a] > 0 and level[to[a]] == level[u] + 1:
                        break
                    it[u] += 1
                if it[u] == len(head[u]):
                    if u == s:
                        break
                    level[u] = -1
                    a = path.pop()
                    u = to[a ^ 1]
                    it[u] += 1
                    continue
                a = head[u][it[u]]
                path.append(a)
                u = to[a]
            if u != t:
                break
            push = min(cap[a] for a in path)
            for a in path:
                cap[a] -= push
                cap[a ^ 1] += push
            flow += push
    level = bfs()
    return flow, frozenset(v for v in range(n) if level[v] >= 0)


def cut_capacity(net: FlowNetwork, side: Iterable[int]) -> int:
    side = set(side)
    return sum(c for u, v, c in net.arcs if u in side and v not in side)


def _check_acyclic(n: int, requires: Sequence[tuple[int, int]]):
    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for u, v in requires:
        succ[u].append(v)
        indeg[v] += 1
    order = [v for v in range(n) if indeg[v] == 0]
    for u in order:
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                order.append(v)
    if len(order) != n:
        raise CycleDetected("requires-graph of the closure problem has a cycle")


def max_closure(weights: Sequence[int], requires: Sequence[tuple[int, int]]) -> tuple[frozenset[int], int]:
    """Closed subset of maximum total weight.

    ``requires`` holds pairs ``(u, v)``: if ``u`` is chosen then ``v`` must be.
    Among optimal closures the one given by the canonical minimum cut is
    returned (it is the inclusion-minimal optimum).
    """
    n = len(weights)
    _check_acyclic(n, requires)
    inf = 1 + sum(abs(w) for w in weights)
    s, t = n, n + 1
    net = FlowNetwork(n + 2, s, t)
    for v, w in enumerate(weights):
        if w > 0:
            net.add_arc(s, v, w)
        elif w < 0:
            net.add_arc(v, t, -w)
    for u, v in requires:
        net.add_arc(u, v, inf)
    _, side = max_flow(net)
    chosen = frozenset(v for v in side if v < n)
    return chosen, sum(weights[v] for v in chosen)
