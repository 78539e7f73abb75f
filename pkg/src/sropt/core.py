"""Problem-domain types for Stable Roommates: instances, matchings, costs.

Agents are numbered ``1..N`` in files and user-facing output.  Internally
every structure is indexed ``0..N-1``; the conversion happens only at the
I/O boundary (``Instance.from_lists``, ``Matching.pairs``, ...).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    DuplicateEntry,
    InvalidCosts,
    MissingAgent,
    NotPerfectMatching,
    OddAgentCount,
    ParseError,
    SelfReference,
    ValidationError,
)

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


def check_int64(value: int) -> int:
    if not INT64_MIN <= value <= INT64_MAX:
        raise OverflowError(f"{value} does not fit in a signed 64-bit integer")
    return value


def _check_pref_lists(prefs: Sequence[Sequence[int]], lines: Sequence[int | None] | None = None):
    n = len(prefs)
    if n < 2 or n % 2:
        raise OddAgentCount(f"need an even number of agents >= 2, got {n}")
    for a, lst in enumerate(prefs):
        line = lines[a] if lines else None
        seen = set()
        for b in lst:
            if b == a:
                raise SelfReference(f"agent {a + 1} lists itself", line)
            if not 0 <= b < n:
                raise MissingAgent(f"agent {a + 1} lists unknown agent {b + 1}", line)
            if b in seen:
                raise DuplicateEntry(f"agent {a + 1} lists agent {b + 1} twice", line)
            seen.add(b)
        if len(seen) != n - 1:
            missing = sorted(set(range(n)) - seen - {a})
            raise MissingAgent(
                f"agent {a + 1} does not rank agent(s) {', '.join(str(m + 1) for m in missing)}",
                line,
            )


@dataclass(frozen=True)
class Instance:
    """A Stable Roommates instance with complete strict preference lists.

    ``prefs[a]`` is agent ``a``'s list, most preferred first, 0-based.
    """

    prefs: tuple[tuple[int, ...], ...]
    rank: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_pref_lists(self.prefs)
        n = len(self.prefs)
        rank = []
        for lst in self.prefs:
            r = [n] * n
            for i, b in enumerate(lst):
                r[b] = i
            rank.append(tuple(r))
        object.__setattr__(self, "rank", tuple(rank))

    @classmethod
    def from_lists(cls, lists: Sequence[Sequence[int]]) -> Instance:
        """Build from 1-based preference lists (``lists[0]`` is agent 1)."""
        return cls(tuple(tuple(b - 1 for b in lst) for lst in lists))

    @property
    def n(self) -> int:
        return len(self.prefs)

    def prefers(self, a: int, b: int, c: int) -> bool:
        """True iff agent ``a`` strictly prefers ``b`` to ``c`` (0-based)."""
        return self.rank[a][b] < self.rank[a][c]

    def to_lists(self) -> list[list[int]]:
        return [[b + 1 for b in lst] for lst in self.prefs]


@dataclass(frozen=True)
class Matching:
    """A perfect matching stored as a partner array (0-based)."""

    mate: tuple[int, ...]

    def __post_init__(self):
        n = len(self.mate)
        if n % 2:
            raise NotPerfectMatching("odd number of agents")
        for a, b in enumerate(self.mate):
            if not 0 <= b < n or b == a or self.mate[b] != a:
                raise NotPerfectMatching(f"agent {a + 1} is not consistently matched")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], n: int) -> Matching:
        """Build from 0-based unordered pairs covering ``0..n-1``."""
        mate = [-1] * n
        for a, b in pairs:
            if mate[a] != -1 or mate[b] != -1:
                raise NotPerfectMatching(f"agent appears twice in pair ({a + 1}, {b + 1})")
            mate[a], mate[b] = b, a
        if -1 in mate:
            raise NotPerfectMatching(f"agent {mate.index(-1) + 1} is unmatched")
        return cls(tuple(mate))

    @property
    def n(self) -> int:
        return len(self.mate)

    def pair_list(self) -> list[tuple[int, int]]:
        """Sorted 0-based pairs ``(a, b)`` with ``a < b``."""
        return [(a, b) for a, b in enumerate(self.mate) if a < b]

    def pairs(self) -> list[tuple[int, int]]:
        """Sorted 1-based pairs, the canonical user-facing form."""
        return [(a + 1, b + 1) for a, b in self.pair_list()]

    def __lt__(self, other: Matching) -> bool:
        return self.pair_list() < other.pair_list()


@dataclass(frozen=True)
class CostFunction:
    """Integer cost ``cost[a][b]`` of agent ``a`` being matched with ``b``."""

    cost: tuple[tuple[int, ...], ...]

    def __call__(self, a: int, b: int) -> int:
        return self.cost[a][b]

    def validate(self, inst: Instance) -> CostFunction:
        """Check strictness and preference consistency; returns self."""
        if len(self.cost) != inst.n:
            raise InvalidCosts(f"cost table covers {len(self.cost)} agents, instance has {inst.n}")
        for a, lst in enumerate(inst.prefs):
            row = self.cost[a]
            for b in lst:
                check_int64(row[b])
            for b, c in zip(lst, lst[1:]):
                if not row[b] < row[c]:
                    raise InvalidCosts(
                        f"agent {a + 1} prefers {b + 1} to {c + 1} but "
                        f"cost {row[b]} is not below {row[c]}"
                    )
        return self


@dataclass(frozen=True)
class SMInstance:
    """Stable Marriage instance; men and women both indexed ``0..n-1``."""

    men_prefs: tuple[tuple[int, ...], ...]
    women_prefs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.men_prefs)
        if n < 1 or len(self.women_prefs) != n:
            raise ValidationError("need n >= 1 men and exactly n women")
        for side in (self.men_prefs, self.women_prefs):
            for lst in side:
                if sorted(lst) != list(range(n)):
                    raise ValidationError(f"list {[x + 1 for x in lst]} is not a permutation of 1..{n}")

    @classmethod
    def from_lists(cls, men: Sequence[Sequence[int]], women: Sequence[Sequence[int]]) -> SMInstance:
        return cls(
            tuple(tuple(w - 1 for w in lst) for lst in men),
            tuple(tuple(m - 1 for m in lst) for lst in women),
        )

    @property
    def n(self) -> int:
        return len(self.men_prefs)


def is_stable(inst: Instance, m: Matching) -> bool:
    """True iff no pair outside ``m`` mutually prefers each other to their partners."""
    if m.n != inst.n:
        raise NotPerfectMatching(f"matching covers {m.n} agents, instance has {inst.n}")
    rank, mate = inst.rank, m.mate
    for a in range(inst.n):
        ra = rank[a][mate[a]]
        for b in inst.prefs[a][:ra]:
            if rank[b][a] < rank[b][mate[b]]:
                return False
    return True


def matching_cost(c: CostFunction, m: Matching) -> int:
    return check_int64(sum(c.cost[a][b] for a, b in enumerate(m.mate)))


def egalitarian_costs(inst: Instance) -> CostFunction:
    """Cost of ``(a, b)`` is the number of agents ``a`` prefers to ``b``."""
    n = inst.n
    return CostFunction(tuple(tuple(r if r < n else 0 for r in inst.rank[a]) for a in range(n)))


def embed_sm(sm: SMInstance) -> Instance:
    """Turn an SM instance into an SR one with the same stable matchings.

    Men keep ids ``0..n-1``, women become ``n..2n-1``.  Each list is the
    original opposite-side list followed by the agent's own side in
    ascending id order.
    """
    n = sm.n
    prefs = []
    for i, lst in enumerate(sm.men_prefs):
        prefs.append(tuple(n + w for w in lst) + tuple(j for j in range(n) if j != i))
    for j, lst in enumerate(sm.women_prefs):
        prefs.append(tuple(lst) + tuple(n + k for k in range(n) if k != j))
    return Instance(tuple(prefs))


def gale_shapley(sm: SMInstance) -> Matching:
    """Men-proposing deferred acceptance.

    Returns the man-optimal stable marriage as a matching over the agents of
    ``embed_sm(sm)`` (woman ``j`` is agent ``n + j``).
    """
    n = sm.n
    wrank = [[0] * n for _ in range(n)]
    for w, lst in enumerate(sm.women_prefs):
        for i, m in enumerate(lst):
            wrank[w][m] = i
    nxt = [0] * n
    husband = [-1] * n
    free = deque(range(n))
    while free:
        m = free.popleft()
        w = sm.men_prefs[m][nxt[m]]
        nxt[m] += 1
        h = husband[w]
        if h == -1:
            husband[w] = m
        elif wrank[w][m] < wrank[w][h]:
            husband[w] = m
            free.append(h)
        else:
            free.append(m)
    return Matching.from_pairs(((husband[w], n + w) for w in range(n)), 2 * n)


# -- text formats -----------------------------------------------------------


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _parse_header(lines, keyword: str) -> tuple[int, int]:
    try:
        no, header = next(lines)
    except StopIteration:
        raise ParseError("empty document", 1) from None
    parts = header.split()
    if len(parts) != 2 or parts[0] != keyword or not parts[1].isdigit():
        raise ParseError(f"expected header '{keyword} <N>', got {header!r}", no)
    return no, int(parts[1])


def _parse_int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"not an integer: {tok!r}", no) from None


def parse_instance(text: str) -> Instance:
    """Parse the ``sr <N>`` preference-list format into a validated Instance."""
    lines = _content_lines(text)
    hno, n = _parse_header(lines, "sr")
    if n < 2 or n % 2:
        raise OddAgentCount(f"agent count {n} is not a positive even number", hno)
    prefs: list[list[int] | None] = [None] * n
    where: list[int | None] = [None] * n
    for no, line in lines:
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected '<agent>: <list>', got {line!r}", no)
        a = _parse_int(head.strip(), no)
        if not 1 <= a <= n:
            raise MissingAgent(f"agent {a} outside 1..{n}", no)
        if prefs[a - 1] is not None:
            raise DuplicateEntry(f"agent {a} has two preference lines", no)
        prefs[a - 1] = [_parse_int(t, no) - 1 for t in rest.split()]
        where[a - 1] = no
    for a, lst in enumerate(prefs):
        if lst is None:
            raise MissingAgent(f"no preference line for agent {a + 1}", hno)
    _check_pref_lists(prefs, where)
    return Instance(tuple(tuple(lst) for lst in prefs))


def format_instance(inst: Instance) -> str:
    out = [f"sr {inst.n}"]
    for a, lst in enumerate(inst.prefs):
        out.append(f"{a + 1}: " + " ".join(str(b + 1) for b in lst))
    return "\n".join(out) + "\n"


def parse_costs(text: str, inst: Instance) -> CostFunction:
    """Parse the ``cost <N>`` format; every ordered pair must appear once."""
    lines = _content_lines(text)
    hno, n = _parse_header(lines, "cost")
    if n != inst.n:
        raise ParseError(f"cost file is for {n} agents, instance has {inst.n}", hno)
    table: list[list[int | None]] = [[None] * n for _ in range(n)]
    for no, line in lines:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"expected '<a> <b> <cost>', got {line!r}", no)
        a, b, v = (_parse_int(t, no) for t in parts)
        if not (1 <= a <= n and 1 <= b <= n):
            raise MissingAgent(f"pair ({a}, {b}) outside 1..{n}", no)
        if a == b:
            raise SelfReference(f"cost for agent {a} with itself", no)
        if table[a - 1][b - 1] is not None:
            raise DuplicateEntry(f"cost for ({a}, {b}) given twice", no)
        table[a - 1][b - 1] = check_int64(v)
    for a in range(n):
        for b in range(n):
            if a != b and table[a][b] is None:
                raise MissingAgent(f"no cost for pair ({a + 1}, {b + 1})", hno)
            if a == b:
                table[a][b] = 0
    return CostFunction(tuple(tuple(row) for row in table)).validate(inst)


def format_costs(c: CostFunction) -> str:
    n = len(c.cost)
    out = [f"cost {n}"]
    for a in range(n):
        for b in range(n):
            if a != b:
                out.append(f"{a + 1} {b + 1} {c.cost[a][b]}")
    return "\n".join(out) + "\n"


def parse_sm(text: str) -> SMInstance:
    """Parse the ``sm <n>`` format (lines ``m<i>: ...`` and ``w<j>: ...``)."""
    lines = _content_lines(text)
    hno, n = _parse_header(lines, "sm")
    if n < 1:
        raise ParseError("need at least one man and one woman", hno)
    sides = {"m": [None] * n, "w": [None] * n}
    for no, line in lines:
        head, sep, rest = line.partition(":")
        head = head.strip()
        if not sep or head[:1] not in sides:
            raise ParseError(f"expected 'm<i>: ...' or 'w<j>: ...', got {line!r}", no)
        i = _parse_int(head[1:], no)
        if not 1 <= i <= n:
            raise MissingAgent(f"{head} outside 1..{n}", no)
        side = sides[head[0]]
        if side[i - 1] is not None:
            raise DuplicateEntry(f"{head} has two preference lines", no)
        lst = [_parse_int(t, no) for t in rest.split()]
        if len(set(lst)) != len(lst):
            raise DuplicateEntry(f"{head} repeats an entry", no)
        if sorted(lst) != list(range(1, n + 1)):
            raise MissingAgent(f"{head} does not rank exactly 1..{n}", no)
        side[i - 1] = lst
    for key, side in sides.items():
        for i, lst in enumerate(side):
            if lst is None:
                raise MissingAgent(f"no preference line for {key}{i + 1}", hno)
    return SMInstance.from_lists(sides["m"], sides["w"])


def format_sm(sm: SMInstance) -> str:
    out = [f"sm {sm.n}"]
    for i, lst in enumerate(sm.men_prefs):
        out.append(f"m{i + 1}: " + " ".join(str(w + 1) for w in lst))
    for j, lst in enumerate(sm.women_prefs):
        out.append(f"w{j + 1}: " + " ".join(str(m + 1) for m in lst))
    return "\n".join(out) + "\n"
