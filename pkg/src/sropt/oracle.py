"""Brute-force reference implementations used to check the fast paths.

Each oracle enumerates its search space outright; the predicates
(``is_stable``, ``matching_cost``, crossing counts) are shared with the
library on purpose.
"""

from __future__ import annotations

from itertools import combinations, permutations, product
from typing import Iterator, Sequence

from .core import CostFunction, Instance, Matching, SMInstance, embed_sm, is_stable, matching_cost
from .errors import TooLarge
from .mco import TwoSatInstance, satisfied
from .poset import MirrorPoset, Orientation, complete_closed_subsets, crossing_edges, make_orientation

MAX_AGENTS = 16
MAX_SUBSETS = 10**6


def perfect_matchings(n: int) -> Iterator[Matching]:
    """Every perfect matching of ``0..n-1`` (``(n-1)!!`` of them)."""
    mate = [-1] * n

    def rec():
        try:
            a = mate.index(-1)
        except ValueError:
            yield Matching(tuple(mate))
            return
        for b in range(a + 1, n):
            if mate[b] == -1:
                mate[a], mate[b] = b, a
                yield from rec()
                mate[a] = mate[b] = -1

    yield from rec()


def all_stable_matchings_bruteforce(inst: Instance) -> list[Matching]:
    if inst.n > MAX_AGENTS:
        raise TooLarge(f"{inst.n} agents exceeds the brute-force limit {MAX_AGENTS}")
    return sorted(m for m in perfect_matchings(inst.n) if is_stable(inst, m))


def optimal_bruteforce(inst: Instance, c: CostFunction) -> tuple[Matching, int] | None:
    """Cheapest stable matching; ties go to the smallest sorted pair list."""
    best = None
    for m in all_stable_matchings_bruteforce(inst):
        key = (matching_cost(c, m), m.pair_list())
        if best is None or key < best[0]:
            best = (key, m)
    if best is None:
        return None
    return best[1], best[0][0]


def stable_marriages_bruteforce(sm: SMInstance) -> list[Matching]:
    """Stable marriages by scanning all n! bijections (women shifted to n..2n-1)."""
    n = sm.n
    mrank = [{w: i for i, w in enumerate(l)} for l in sm.men_prefs]
    wrank = [{m: i for i, m in enumerate(l)} for l in sm.women_prefs]
    out = []
    for perm in permutations(range(n)):
        wife = perm
        husband = [0] * n
        for m, w in enumerate(wife):
            husband[w] = m
        blocked = any(
            mrank[m][w] < mrank[m][wife[m]] and wrank[w][m] < wrank[w][husband[w]]
            for m in range(n)
            for w in range(n)
        )
        if not blocked:
            out.append(Matching.from_pairs(((m, n + w) for m, w in enumerate(wife)), 2 * n))
    return sorted(out)


def mco_bruteforce(p: MirrorPoset) -> tuple[int, Orientation]:
    """Fewest crossing edges over all orientations (first minimum by bitmask)."""
    if p.n_pairs > 20:
        raise TooLarge(f"{p.n_pairs} dual pairs is too many to enumerate")
    subsets = complete_closed_subsets(p, cap=20)
    if len(subsets) > MAX_SUBSETS:
        raise TooLarge(f"{len(subsets)} complete closed subsets")
    best = None
    for s in subsets:
        o = make_orientation(p, s)
        k = len(crossing_edges(o))
        if best is None or k < best[0]:
            best = (k, o)
    return best


def almost_2sat_bruteforce(inst: TwoSatInstance) -> tuple[int, list[bool]] | None:
    """Minimum soft violations over all 2^n assignments meeting the hard clauses."""
    best = None
    for bits_ in product((False, True), repeat=inst.n_vars):
        if not all(satisfied(c, bits_) for c in inst.hard):
            continue
        v = sum(not satisfied(c, bits_) for c in inst.soft)
        if best is None or v < best[0]:
            best = (v, list(bits_))
    return best


def max_closure_bruteforce(weights: Sequence[int], requires: Sequence[tuple[int, int]]) -> int:
    n = len(weights)
    best = 0
    for mask in range(1 << n):
        if all(not (mask >> u & 1) or mask >> v & 1 for u, v in requires):
            best = max(best, sum(w for i, w in enumerate(weights) if mask >> i & 1))
    return best


def min_cut_bruteforce(n: int, source: int, sink: int, arcs: Sequence[tuple[int, int, int]]) -> int:
    others = [v for v in range(n) if v not in (source, sink)]
    best = None
    for r in range(len(others) + 1):
        for extra in combinations(others, r):
            side = {source, *extra}
            cap = sum(c for u, v, c in arcs if u in side and v not in side)
            best = cap if best is None else min(best, cap)
    return best


def min_vertex_cover_bruteforce(n: int, edges: Sequence[tuple[int, int]]) -> int:
    for size in range(n + 1):
        for cover in combinations(range(n), size):
            cs = set(cover)
            if all(u in cs or v in cs for u, v in edges):
                return size
    return n


def sm_embedding_stable_set(sm: SMInstance) -> list[Matching]:
    """Stable matchings of the SR embedding, by the SR brute force."""
    return all_stable_matchings_bruteforce(embed_sm(sm))
