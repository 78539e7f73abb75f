"""Irving's algorithm, rotations, and the rotation poset of an SR instance.

A table is a tuple of per-agent candidate lists (each a subsequence of the
agent's preference list).  Rotations are discovered by exhaustive
breadth-first exploration of the tables reachable from the phase-1 table;
each reachable table is memoized together with the set of rotations
eliminated to reach it, which is unique per table.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .core import CostFunction, Instance, Matching, check_int64
from .errors import BudgetExceeded, EmptyListFailure, NotClosed, NotComplete
from .poset import MirrorPoset, bits, check_mirror

DEFAULT_TABLE_CAP = 200_000

Table = tuple[tuple[int, ...], ...]


def first(t: Table, a: int) -> int:
    return t[a][0]


def second(t: Table, a: int) -> int:
    return t[a][1]


def last(t: Table, a: int) -> int:
    return t[a][-1]


def is_terminal(t: Table) -> bool:
    return all(len(lst) == 1 for lst in t)


def table_matching(t: Table) -> Matching:
    return Matching(tuple(lst[0] for lst in t))


def pair_set(t: Table) -> frozenset[tuple[int, int]]:
    return frozenset((a, b) for a, lst in enumerate(t) for b in lst if a < b)


@dataclass(frozen=True, order=True)
class Rotation:
    """Cyclic sequence of pairs ``(x_i, y_i)``, rotated so min ``x`` leads."""

    cycle: tuple[tuple[int, int], ...]

    @classmethod
    def canonical(cls, pairs: Iterable[tuple[int, int]]) -> Rotation:
        pairs = tuple(pairs)
        i = min(range(len(pairs)), key=lambda j: pairs[j][0])
        return cls(pairs[i:] + pairs[:i])

    def __len__(self) -> int:
        return len(self.cycle)

    @property
    def xs(self) -> tuple[int, ...]:
        return tuple(x for x, _ in self.cycle)

    @property
    def ys(self) -> tuple[int, ...]:
        return tuple(y for _, y in self.cycle)

    def reversal(self) -> Rotation:
        """``(y_1, x_0), (y_2, x_1), ..., (y_0, x_{r-1})``, canonicalized."""
        r = len(self.cycle)
        return Rotation.canonical(
            (self.cycle[(i + 1) % r][1], self.cycle[i][0]) for i in range(r)
        )

    def to_json(self) -> list[list[int]]:
        return [[x + 1, y + 1] for x, y in self.cycle]

    def __str__(self) -> str:
        return " ".join(f"({x + 1},{y + 1})" for x, y in self.cycle)


def phase1(inst: Instance) -> Table | None:
    """Proposal phase of Irving's algorithm; ``None`` if some list empties."""
    n = inst.n
    lists = [list(p) for p in inst.prefs]
    alive = [set(p) for p in inst.prefs]
    holder = [-1] * n
    free = deque(range(n))
    while free:
        x = free.popleft()
        while lists[x] and lists[x][0] not in alive[x]:
            lists[x].pop(0)
        if not lists[x]:
            return None
        y = lists[x][0]
        prev = holder[y]
        holder[y] = x
        # y rejects everyone it likes less than x
        lst = [z for z in lists[y] if z in alive[y]]
        cut = lst.index(x) + 1
        for z in lst[cut:]:
            alive[y].discard(z)
            alive[z].discard(y)
        lists[y] = lst[:cut]
        if prev != -1 and prev != x:
            free.append(prev)
    t = tuple(tuple(b for b in inst.prefs[a] if b in alive[a]) for a in range(n))
    if any(not lst for lst in t):
        return None
    return t


def exposed_rotations(t: Table) -> list[Rotation]:
    """Every rotation exposed in ``t``, in canonical order."""
    n = len(t)
    nxt = [-1] * n
    for a in range(n):
        if len(t[a]) >= 2:
            nxt[a] = last(t, second(t, a))
    state = [0] * n  # 0 unvisited, 1 on current walk, 2 done
    found = []
    for start in range(n):
        if nxt[start] == -1 or state[start]:
            continue
        walk = []
        a = start
        while a != -1 and state[a] == 0:
            state[a] = 1
            walk.append(a)
            a = nxt[a]
        if a != -1 and state[a] == 1:
            xs = walk[walk.index(a):]
            found.append(Rotation.canonical((x, first(t, x)) for x in xs))
        for w in walk:
            state[w] = 2
    found.sort()
    return found


def eliminate(t: Table, rho: Rotation) -> Table:
    """Return ``t/rho``: each ``y_i`` drops every candidate below ``x_{i-1}``."""
    r = len(rho.cycle)
    drop: dict[int, set[int]] = {}
    for i, (_, y) in enumerate(rho.cycle):
        x_prev = rho.cycle[i - 1][0]
        lst = t[y]
        cut = lst.index(x_prev) + 1
        for z in lst[cut:]:
            drop.setdefault(y, set()).add(z)
            drop.setdefault(z, set()).add(y)
    out = tuple(
        tuple(b for b in lst if b not in drop[a]) if a in drop else lst
        for a, lst in enumerate(t)
    )
    for a, lst in enumerate(out):
        if not lst:
            raise EmptyListFailure(f"eliminating rotation {rho} empties the list of agent {a + 1}")
    assert r >= 2
    return out


def solve(inst: Instance) -> Matching | None:
    """Irving's algorithm; eliminates the canonical-least exposed rotation."""
    t = phase1(inst)
    if t is None:
        return None
    while not is_terminal(t):
        rho = exposed_rotations(t)[0]
        try:
            t = eliminate(t, rho)
        except EmptyListFailure:
            return None
    return table_matching(t)


@dataclass
class RotationUniverse:
    """All rotations of a solvable instance and their order.

    Rotation ids index ``rotations`` (sorted canonically).  ``below[i]`` is a
    bitmask over rotation ids of the strict predecessors of rotation ``i``.
    """

    inst: Instance
    rotations: list[Rotation]
    singular: frozenset[int]
    dual: dict[int, int]
    below: list[int]
    base_table: Table
    prime_table: Table
    solution: Matching
    tables: dict[Table, int] = field(repr=False)
    terminals: list[tuple[Matching, int]] = field(repr=False)

    @property
    def dual_pairs(self) -> list[tuple[int, int]]:
        return sorted((i, j) for i, j in self.dual.items() if i < j)

    def lt(self, a: int, b: int) -> bool:
        return bool(self.below[b] >> a & 1)

    @property
    def order(self) -> list[tuple[int, int]]:
        return [(a, b) for b in range(len(self.rotations)) for a in bits(self.below[b])]

    @cached_property
    def rotation_of(self) -> list[int]:
        """Reduced-poset element -> rotation id (pair i is elements 2i, 2i+1)."""
        out = []
        for i, j in self.dual_pairs:
            out += [i, j]
        return out

    @cached_property
    def element_of(self) -> dict[int, int]:
        return {r: e for e, r in enumerate(self.rotation_of)}

    @cached_property
    def reduced(self) -> MirrorPoset:
        return reduced_poset(self)

    @cached_property
    def fixed_pairs(self) -> list[tuple[int, int]]:
        moving = set()
        for r in self.dual:
            moving.update(self.rotations[r].xs)
            moving.update(self.rotations[r].ys)
        return [(a, b) for a, b in self.solution.pair_list() if a not in moving]

    def subset_of(self, z_mask: int) -> int:
        """Map an eliminated-rotation set (over rotation ids) to poset elements."""
        out = 0
        for r in bits(z_mask):
            e = self.element_of.get(r)
            if e is not None:
                out |= 1 << e
        return out

    def stable_matchings(self) -> list[tuple[Matching, int]]:
        """Terminal tables as (matching, complete closed subset) pairs."""
        return sorted((m, self.subset_of(z)) for m, z in self.terminals)


def discover_rotations(inst: Instance, max_tables: int = DEFAULT_TABLE_CAP) -> RotationUniverse | None:
    """Explore every table reachable from the phase-1 table.

    Returns ``None`` for unsolvable instances.  Raises
    :class:`BudgetExceeded` once more than ``max_tables`` tables are seen.
    """
    solution = solve(inst)
    if solution is None:
        return None
    t0 = phase1(inst)
    ids: dict[Rotation, int] = {}
    inter: dict[int, int] = {}
    memo: dict[Table, int] = {t0: 0}
    queue = deque([t0])
    terminals = []
    while queue:
        t = queue.popleft()
        z = memo[t]
        exposed = exposed_rotations(t)
        if not exposed:
            terminals.append((table_matching(t), z))
        for rho in exposed:
            rid = ids.setdefault(rho, len(ids))
            inter[rid] = inter.get(rid, z) & z
            nt = eliminate(t, rho)
            nz = z | (1 << rid)
            seen = memo.get(nt)
            if seen is None:
                if len(memo) >= max_tables:
                    raise BudgetExceeded(f"rotation discovery passed {max_tables} tables")
                memo[nt] = nz
                queue.append(nt)
            elif seen != nz:
                raise AssertionError("table reached with two different rotation sets")

    rotations = sorted(ids)
    relabel = {ids[r]: i for i, r in enumerate(rotations)}

    def remap(mask: int) -> int:
        out = 0
        for b in bits(mask):
            out |= 1 << relabel[b]
        return out

    index = {r: i for i, r in enumerate(rotations)}
    dual = {}
    for i, r in enumerate(rotations):
        j = index.get(r.reversal())
        if j is not None:
            dual[i] = j
    singular = frozenset(i for i in range(len(rotations)) if i not in dual)
    below = [0] * len(rotations)
    for old, mask in inter.items():
        below[relabel[old]] = remap(mask)
    below = _transitive_close(below)
    memo = {t: remap(z) for t, z in memo.items()}
    terminals = [(m, remap(z)) for m, z in terminals]
    z0 = sum(1 << i for i in singular)
    prime = next(t for t, z in memo.items() if z == z0)
    return RotationUniverse(
        inst=inst,
        rotations=rotations,
        singular=singular,
        dual=dual,
        below=below,
        base_table=t0,
        prime_table=prime,
        solution=solution,
        tables=memo,
        terminals=terminals,
    )


def _transitive_close(below: list[int]) -> list[int]:
    out = list(below)
    changed = True
    while changed:
        changed = False
        for b in range(len(out)):
            acc = out[b]
            for a in bits(out[b]):
                acc |= out[a]
            if acc != out[b]:
                out[b] = acc
                changed = True
    return out


def reduced_poset(u: RotationUniverse) -> MirrorPoset:
    """Order restricted to non-singular rotations, as a mirror poset."""
    rel = []
    for e, r in enumerate(u.rotation_of):
        for s in bits(u.below[r]):
            f = u.element_of.get(s)
            if f is not None:
                rel.append((f, e))
    return check_mirror(len(u.dual_pairs), rel)


def matching_from_subset(u: RotationUniverse, s: int) -> Matching:
    """Stable matching for the complete closed subset ``s`` of the reduced poset.

    An agent in the X-set of some rotation of ``s`` is matched with the
    partner following it in the latest such rotation; otherwise, if it is in
    a Y-set, with the predecessor x of the earliest such rotation; otherwise
    it keeps its fixed partner.
    """
    p = u.reduced
    if s & ~p.full or not p.is_complete(s):
        raise NotComplete("subset must hold exactly one rotation of every dual pair")
    if not p.is_closed(s):
        raise NotClosed("subset is missing a predecessor")
    rank = u.inst.rank
    n = u.inst.n
    # best[a] = (key, partner); X-set wins over Y-set
    via_x: dict[int, tuple[int, int]] = {}
    via_y: dict[int, tuple[int, int]] = {}
    for e in bits(s):
        cyc = u.rotations[u.rotation_of[e]].cycle
        r = len(cyc)
        for i, (x, y) in enumerate(cyc):
            # latest rotation with x in X-set: the one whose y is least preferred by x
            key = rank[x][y]
            if x not in via_x or key > via_x[x][0]:
                via_x[x] = (key, cyc[(i + 1) % r][1])
            # earliest rotation with y in Y-set: the one whose x is most preferred by y
            key = rank[y][x]
            if y not in via_y or key < via_y[y][0]:
                via_y[y] = (key, cyc[i - 1][0])
    mate = list(u.solution.mate)
    for a in range(n):
        if a in via_x:
            mate[a] = via_x[a][1]
        elif a in via_y:
            mate[a] = via_y[a][1]
    return Matching(tuple(mate))


def rotation_cost(c: CostFunction, rho: Rotation) -> int:
    """Cost drop from eliminating ``rho``: old pairs minus new pairs."""
    cyc = rho.cycle
    r = len(cyc)
    assert r >= 2
    total = 0
    for i, (x, y) in enumerate(cyc):
        y_next = cyc[(i + 1) % r][1]
        total += c(x, y) + c(y, x) - c(x, y_next) - c(y_next, x)
    return check_int64(total)
