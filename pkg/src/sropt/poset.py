"""Mirror posets: validation, Hasse diagrams, closed subsets, orientations.

Elements are the integers ``0..2k-1`` for ``k`` dual pairs; the dual of
``e`` is ``e ^ 1``, so pair ``i`` is ``{2i, 2i+1}``.  Element subsets are
Python ints used as bitmasks.  In the text format pair ``i`` is written
``i+1`` (element ``2i``) and ``-(i+1)`` (element ``2i+1``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from .errors import (
    CapExceeded,
    CycleDetected,
    DualComparable,
    MirrorAxiomViolated,
    NotClosed,
    NotComplete,
    ParseError,
)

DEFAULT_SUBSET_CAP = 20
DEFAULT_CROSSING_CAP = 16


def dual(e: int) -> int:
    return e ^ 1


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def label(e: int) -> str:
    return str(e // 2 + 1) if e % 2 == 0 else f"-{e // 2 + 1}"


def parse_label(tok: str, n_pairs: int, line: int | None = None) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"bad element name {tok!r}", line) from None
    if v == 0 or abs(v) > n_pairs:
        raise ParseError(f"element {tok} outside ±1..{n_pairs}", line)
    return 2 * (abs(v) - 1) + (v < 0)


@dataclass(frozen=True)
class MirrorPoset:
    """A validated mirror poset; build with :func:`check_mirror`.

    ``below[e]`` is the bitmask of strict predecessors of ``e`` and
    ``above[e]`` that of strict successors.
    """

    n_pairs: int
    below: tuple[int, ...]
    above: tuple[int, ...] = field(repr=False)

    @property
    def size(self) -> int:
        return 2 * self.n_pairs

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    @cached_property
    def even_mask(self) -> int:
        return int("01" * self.n_pairs, 2) if self.n_pairs else 0

    def lt(self, a: int, b: int) -> bool:
        return bool(self.below[b] >> a & 1)

    def relations(self) -> list[tuple[int, int]]:
        return [(a, b) for b in range(self.size) for a in bits(self.below[b])]

    def dual_mask(self, mask: int) -> int:
        ev = self.even_mask
        return ((mask & ev) << 1) | ((mask >> 1) & ev)

    def pred_closure(self, mask: int) -> int:
        out = mask
        for e in bits(mask):
            out |= self.below[e]
        return out

    def is_partially_complete(self, mask: int) -> bool:
        return mask & self.dual_mask(mask) == 0

    def is_complete(self, mask: int) -> bool:
        return self.is_partially_complete(mask) and bin(mask).count("1") == self.n_pairs

    def is_closed(self, mask: int) -> bool:
        return all(self.below[e] & ~mask == 0 for e in bits(mask))

    @cached_property
    def hasse(self) -> list[tuple[int, int]]:
        return hasse(self)

    def induced_relations(self, mask: int) -> list[tuple[int, int]]:
        """Strict relations ``(a, b)``, ``a < b``, among elements of ``mask``."""
        return [(a, b) for b in bits(mask) for a in bits(self.below[b] & mask)]


def _close(size: int, rel: Iterable[tuple[int, int]]) -> tuple[list[int], list[int]]:
    succ: list[set[int]] = [set() for _ in range(size)]
    indeg = [0] * size
    for a, b in rel:
        if a == b:
            raise CycleDetected(f"element {label(a)} is related to itself")
        if b not in succ[a]:
            succ[a].add(b)
            indeg[b] += 1
    order = [e for e in range(size) if indeg[e] == 0]
    for e in order:
        for s in succ[e]:
            indeg[s] -= 1
            if indeg[s] == 0:
                order.append(s)
    if len(order) != size:
        stuck = [label(e) for e in range(size) if indeg[e] > 0]
        raise CycleDetected(f"order relation has a cycle through {', '.join(stuck)}")
    below = [0] * size
    for e in order:
        for s in succ[e]:
            below[s] |= below[e] | (1 << e)
    above = [0] * size
    for b in range(size):
        for a in bits(below[b]):
            above[a] |= 1 << b
    return below, above


def check_mirror(n_pairs: int, lt: Iterable[tuple[int, int]]) -> MirrorPoset:
    """Transitively close ``lt`` and verify the mirror-poset axioms."""
    size = 2 * n_pairs
    lt = list(lt)
    for a, b in lt:
        if not (0 <= a < size and 0 <= b < size):
            raise ValueError(f"relation ({a}, {b}) outside 0..{size - 1}")
    below, above = _close(size, lt)
    for e in range(size):
        if below[e] >> dual(e) & 1:
            raise DualComparable(f"{label(dual(e))} < {label(e)} but they are duals")
    for b in range(size):
        for a in bits(below[b]):
            if not below[dual(a)] >> dual(b) & 1:
                raise MirrorAxiomViolated(
                    f"{label(a)} < {label(b)} but not {label(dual(b))} < {label(dual(a))}"
                )
    return MirrorPoset(n_pairs, tuple(below), tuple(above))


def mirror_closure(n_pairs: int, covers: Iterable[tuple[int, int]]) -> MirrorPoset:
    """Like :func:`check_mirror` but adds the mirror image of every relation."""
    rel = []
    for a, b in covers:
        rel.append((a, b))
        rel.append((dual(b), dual(a)))
    return check_mirror(n_pairs, rel)


def hasse(p: MirrorPoset) -> list[tuple[int, int]]:
    """Cover relations ``(low, high)`` in sorted order."""
    return [
        (a, b)
        for a in range(p.size)
        for b in bits(p.above[a])
        if p.above[a] & p.below[b] == 0
    ]


def complete_closed_subsets(p: MirrorPoset, cap: int = DEFAULT_SUBSET_CAP) -> list[int]:
    """All complete closed subsets as bitmasks, ascending."""
    if p.n_pairs > cap:
        raise CapExceeded(f"{p.n_pairs} dual pairs exceeds the enumeration cap {cap}")
    # Choosing e is incompatible with an earlier choice c iff dual(c) < e.
    conflict = [p.dual_mask(p.below[e]) for e in range(p.size)]
    out: list[int] = []

    def rec(i: int, mask: int):
        if i == p.n_pairs:
            out.append(mask)
            return
        for e in (2 * i, 2 * i + 1):
            if conflict[e] & mask == 0:
                rec(i + 1, mask | (1 << e))

    rec(0, 0)
    out.sort()
    return out


def median_graph(p: MirrorPoset, cap: int = DEFAULT_SUBSET_CAP) -> nx.Graph:
    """Graph on complete closed subsets; edges join subsets one swap apart."""
    subsets = complete_closed_subsets(p, cap)
    g = nx.Graph()
    g.add_nodes_from(subsets)
    present = set(subsets)
    for s in subsets:
        for e in bits(s):
            t = s ^ (1 << e) ^ (1 << dual(e))
            if t in present and s < t:
                g.add_edge(s, t)
    return g


@dataclass(frozen=True)
class Orientation:
    base: MirrorPoset
    neg: int
    pos: int

    def sign(self, e: int) -> str:
        return "-" if self.neg >> e & 1 else "+"


def make_orientation(p: MirrorPoset, base: int | Iterable[int]) -> Orientation:
    """Orient ``p`` at ``base`` (bitmask or iterable of elements)."""
    if not isinstance(base, int):
        m = 0
        for e in base:
            m |= 1 << e
        base = m
    if base & ~p.full or not p.is_complete(base):
        raise NotComplete("base must hold exactly one element of every dual pair")
    if not p.is_closed(base):
        raise NotClosed("base is missing a predecessor of one of its elements")
    return Orientation(p, base, p.full & ~base)


def crossing_edges(o: Orientation) -> list[tuple[int, int]]:
    return [(a, b) for a, b in o.base.hasse if o.neg >> a & 1 and o.pos >> b & 1]


def crossing_pairs(o: Orientation) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Crossing edges grouped with their mirror image ``(dual b, dual a)``."""
    edges = crossing_edges(o)
    seen = set()
    out = []
    for a, b in edges:
        if (a, b) in seen:
            continue
        m = (dual(b), dual(a))
        seen.update({(a, b), m})
        out.append(((a, b), m))
    return out


def semilattice_leq(o: Orientation, s: int, t: int) -> bool:
    """``s`` lies below ``t`` in the semilattice rooted at ``o.neg``."""
    return (s & o.pos) & ~t == 0


def maximal_elements(o: Orientation, cap: int = DEFAULT_CROSSING_CAP) -> list[int]:
    """Maximal elements of the semilattice rooted at the orientation's base.

    Every maximal element has the form ``A ∪ Pred(A) ∪ C`` where ``A`` picks
    one of three patterns per crossing pair and ``C`` takes the positive
    element of every pair left untouched.  All such forms are built (pruning
    partial choices that already hold both elements of a pair), validated,
    and the ⊑-maximal survivors returned in ascending order.
    """
    p = o.base
    pairs = crossing_pairs(o)
    if len(pairs) > cap:
        raise CapExceeded(f"{len(pairs)} crossing pairs exceeds the cap {cap}")
    options = []
    for (a, b), _ in pairs:
        alpha_neg, beta_pos = a, b
        alpha_pos, beta_neg = dual(a), dual(b)
        options.append(
            [
                p.pred_closure((1 << alpha_pos) | (1 << beta_neg)),
                p.pred_closure((1 << alpha_neg) | (1 << beta_pos)),
                p.pred_closure((1 << alpha_neg) | (1 << beta_neg)),
            ]
        )
    candidates: set[int] = set()

    def rec(i: int, mask: int):
        if i == len(options):
            touched = mask | p.dual_mask(mask)
            full = mask | (o.pos & ~touched)
            if p.is_closed(full):
                candidates.add(full)
            return
        for opt in options[i]:
            m = mask | opt
            if p.is_partially_complete(m):
                rec(i + 1, m)

    rec(0, 0)
    cands = sorted(candidates)
    pos_parts = [c & o.pos for c in cands]
    result = []
    for c, cp in zip(cands, pos_parts):
        if not any(cp != dp and cp & ~dp == 0 for dp in pos_parts):
            result.append(c)
    return result


def parse_mirror_poset(text: str) -> MirrorPoset:
    """Parse the ``mp <k>`` format; mirrored relations are added automatically."""
    lines = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((no, line))
    if not lines:
        raise ParseError("empty document", 1)
    no, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "mp" or not parts[1].isdigit():
        raise ParseError(f"expected header 'mp <k>', got {header!r}", no)
    k = int(parts[1])
    covers = []
    for no, line in lines[1:]:
        toks = line.split()
        if len(toks) != 3 or toks[1] != "<":
            raise ParseError(f"expected '<a> < <b>', got {line!r}", no)
        covers.append((parse_label(toks[0], k, no), parse_label(toks[2], k, no)))
    return mirror_closure(k, covers)


def format_mirror_poset(p: MirrorPoset) -> str:
    out = [f"mp {p.n_pairs}"]
    out += [f"{label(a)} < {label(b)}" for a, b in p.hasse]
    return "\n".join(out) + "\n"


def subset_labels(mask: int, names: Sequence[str] | None = None) -> list[str]:
    names = names or [label(e) for e in range(mask.bit_length())]
    return [names[e] for e in bits(mask)]


def to_dot(p: MirrorPoset, o: Orientation | None = None, names: Sequence[str] | None = None) -> str:
    """DOT for the Hasse diagram; crossing edges are drawn red when oriented."""
    names = names or [label(e) for e in range(p.size)]
    crossing = set(crossing_edges(o)) if o else set()
    out = ["digraph poset {", "  rankdir=BT;"]
    for e in range(p.size):
        attrs = f'label="{names[e]}"'
        if o is not None:
            attrs += ", style=filled, fillcolor=" + ("lightblue" if o.neg >> e & 1 else "lightpink")
        out.append(f"  n{e} [{attrs}];")
    for a, b in p.hasse:
        style = " [color=red, penwidth=2]" if (a, b) in crossing else ""
        out.append(f"  n{a} -> n{b}{style};")
    out.append("}")
    return "\n".join(out) + "\n"


def to_json(p: MirrorPoset, names: Sequence[str] | None = None) -> dict:
    names = names or [label(e) for e in range(p.size)]
    return {
        "n_pairs": p.n_pairs,
        "elements": list(names),
        "dual": [names[dual(e)] for e in range(p.size)],
        "hasse": [[names[a], names[b]] for a, b in p.hasse],
    }
