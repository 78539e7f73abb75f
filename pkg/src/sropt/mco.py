"""Minimum crossing orientation of a mirror poset.

The search is cast as Almost 2-SAT: one variable per dual pair (false puts
the pair's first element in the negative part), a hard clause per Hasse
edge forbidding an edge from positive to negative, and a soft clause per
Hasse edge that is violated exactly when the edge crosses from negative to
positive.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import BudgetExceeded
from .poset import MirrorPoset, Orientation, crossing_edges, dual, make_orientation

DEFAULT_K_MAX = 16

Clause = tuple[int, int]  # DIMACS-style literals: +v means x_v true, -v false (1-based)


@dataclass
class TwoSatInstance:
    n_vars: int
    hard: list[Clause] = field(default_factory=list)
    soft: list[Clause] = field(default_factory=list)
    budget: int = 0

    def violated_soft(self, assignment: Sequence[bool]) -> int:
        return sum(not satisfied(c, assignment) for c in self.soft)

    def hard_ok(self, assignment: Sequence[bool]) -> bool:
        return all(satisfied(c, assignment) for c in self.hard)

    def to_text(self) -> str:
        """DIMACS-like dump; clause lines start with ``h`` (hard) or ``s`` (soft)."""
        out = [
            f"c almost-2sat budget {self.budget}",
            f"p cnf {self.n_vars} {len(self.hard) + len(self.soft)}",
        ]
        out += [f"h {a} {b} 0" for a, b in self.hard]
        out += [f"s {a} {b} 0" for a, b in self.soft]
        return "\n".join(out) + "\n"


@dataclass
class McoResult:
    orientation: Orientation
    crossings: int
    k_used: int


def satisfied(clause: Clause, assignment: Sequence[bool]) -> bool:
    return any(assignment[abs(l) - 1] == (l > 0) for l in clause)


def _node(lit: int) -> int:
    return 2 * (abs(lit) - 1) + (lit < 0)


def _implication_graph(n_vars: int, clauses: Sequence[tuple[int, Clause]]):
    adj: list[list[tuple[int, int]]] = [[] for _ in range(2 * n_vars)]
    for cid, (a, b) in clauses:
        adj[_node(-a)].append((_node(b), cid))
        adj[_node(-b)].append((_node(a), cid))
    return adj


def _tarjan(adj: list[list[tuple[int, int]]]) -> list[int]:
    """SCC ids in reverse topological order of the condensation."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(adj[v]):
                work[-1] = (v, i + 1)
                w = adj[v][i][0]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def _path_clauses(adj, src: int, dst: int) -> list[int]:
    prev: dict[int, tuple[int, int]] = {src: (-1, -1)}
    q = deque([src])
    while q:
        u = q.popleft()
        if u == dst:
            break
        for w, cid in adj[u]:
            if w not in prev:
                prev[w] = (u, cid)
                q.append(w)
    out = []
    v = dst
    while v != src:
        u, cid = prev[v]
        out.append(cid)
        v = u
    return out


def two_sat(n_vars: int, clauses: Sequence[tuple[int, Clause]]):
    """Solve 2-SAT over clauses tagged with ids.

    Returns ``(assignment, None)`` when satisfiable, else ``(None, ids)``
    where ``ids`` are the clauses on a shortest contradiction witness
    ``x -> ... -> not x -> ... -> x``.
    """
    adj = _implication_graph(n_vars, clauses)
    comp = _tarjan(adj)
    bad = [v for v in range(n_vars) if comp[2 * v] == comp[2 * v + 1]]
    if not bad:
        return [comp[2 * v] < comp[2 * v + 1] for v in range(n_vars)], None
    best = None
    for v in bad:
        ids = set(_path_clauses(adj, 2 * v, 2 * v + 1)) | set(_path_clauses(adj, 2 * v + 1, 2 * v))
        if best is None or len(ids) < len(best):
            best = ids
    return None, best


def solve_almost_2sat(inst: TwoSatInstance) -> list[bool] | None:
    """Assignment meeting every hard clause and violating at most ``budget`` soft ones.

    Branches on the soft clauses of a contradiction witness: any solution
    must give up at least one of them.  Depth is bounded by the budget and
    visited give-up sets are memoized.
    """
    n_hard = len(inst.hard)
    tagged_hard = list(enumerate(inst.hard))
    seen: set[frozenset[int]] = set()

    def search(dropped: frozenset[int], budget: int):
        if dropped in seen:
            return None
        seen.add(dropped)
        clauses = tagged_hard + [
            (n_hard + i, c) for i, c in enumerate(inst.soft) if i not in dropped
        ]
        assignment, witness = two_sat(inst.n_vars, clauses)
        if assignment is not None:
            return assignment
        soft_ids = sorted(cid - n_hard for cid in witness if cid >= n_hard)
        if budget == 0 or not soft_ids:
            return None
        for sid in soft_ids:
            found = search(dropped | {sid}, budget - 1)
            if found is not None:
                return found
        return None

    return search(frozenset(), inst.budget)


def _y(e: int) -> int:
    # literal true iff element e lands in the negative part
    v = e // 2 + 1
    return -v if e % 2 == 0 else v


def _z(e: int) -> int:
    return -_y(e)


def to_almost_2sat(p: MirrorPoset, budget: int = 0, all_soft: bool = False) -> TwoSatInstance:
    """Encode minimum-crossing orientation of ``p`` as Almost 2-SAT.

    For a Hasse edge ``(a, b)`` the type-1 clause ``y_a or z_b`` keeps the
    negative part closed and the type-2 clause ``z_a or y_b`` forbids the
    edge from crossing.  By default type-1 clauses are hard; with
    ``all_soft`` they are soft and repeated ``budget + 1`` times.
    """
    inst = TwoSatInstance(p.n_pairs, budget=budget)
    for a, b in p.hasse:
        t1 = (_y(a), _z(b))
        t2 = (_z(a), _y(b))
        if all_soft:
            inst.soft.extend([t1] * (budget + 1))
        else:
            inst.hard.append(t1)
        inst.soft.append(t2)
    return inst


def assignment_to_negative(p: MirrorPoset, assignment: Sequence[bool]) -> int:
    """Negative part of the perfect partition for ``assignment``."""
    neg = 0
    for i in range(p.n_pairs):
        neg |= 1 << (2 * i + (1 if assignment[i] else 0))
    return neg


def orientation_to_assignment(o: Orientation) -> list[bool]:
    return [bool(o.neg >> (2 * i + 1) & 1) for i in range(o.base.n_pairs)]


def zero_crossing_orientation(p: MirrorPoset) -> Orientation | None:
    """Crossing-free orientation, or ``None`` if a dual pair is Hasse-connected."""
    parent = list(range(p.size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in p.hasse:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    for e in range(0, p.size, 2):
        if find(e) == find(e + 1):
            return None
    side: dict[int, bool] = {}
    neg = 0
    for e in range(p.size):
        root = find(e)
        if root not in side:
            side[root] = True
            side[find(dual(e))] = False
        if side[root]:
            neg |= 1 << e
    return make_orientation(p, neg)


def min_crossing_orientation(p: MirrorPoset, k_max: int = DEFAULT_K_MAX) -> McoResult:
    o = zero_crossing_orientation(p)
    if o is not None:
        return McoResult(o, 0, 0)
    # crossing counts are even, so odd budgets never succeed where k-1 failed
    for k in range(2, k_max + 1, 2):
        assignment = solve_almost_2sat(to_almost_2sat(p, k))
        if assignment is not None:
            o = make_orientation(p, assignment_to_negative(p, assignment))
            crossings = len(crossing_edges(o))
            assert crossings == k
            return McoResult(o, crossings, k)
    raise BudgetExceeded(f"no orientation with at most {k_max} crossing edges")
