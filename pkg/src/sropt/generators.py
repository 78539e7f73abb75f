"""Seeded instance and poset generators.

Randomness comes from SplitMix64 so streams are reproducible bit-for-bit
on any platform:

* ``SplitMix64(seed).next()`` advances the 64-bit state by
  ``0x9E3779B97F4A7C15`` and returns the standard SplitMix64 mix of it.
* ``below(n)`` draws uniformly from ``0..n-1`` by rejecting draws at or
  above the largest multiple of ``n`` that fits in 64 bits, then ``% n``.
* ``shuffle`` is Fisher-Yates from the last index down, swapping ``i``
  with ``below(i + 1)``.
* A random SR instance shuffles, for agents ``0..N-1`` in order, the
  ascending list of the other agents.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .core import CostFunction, Instance, SMInstance
from .engine import solve
from .errors import GiveUp, NotThreeRegular, OddAgentCount
from .poset import MirrorPoset, Orientation, check_mirror, make_orientation

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            x = self.next()
            if x < limit:
                return x % n

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items


def random_sr(rng: SplitMix64, n: int) -> Instance:
    if n < 2 or n % 2:
        raise OddAgentCount(f"agent count {n} is not a positive even number")
    return Instance(
        tuple(tuple(rng.shuffle([b for b in range(n) if b != a])) for a in range(n))
    )


def gen_random_sr(seed: int, n: int) -> Instance:
    """Uniform random complete preferences; no solvability guarantee."""
    return random_sr(SplitMix64(seed), n)


def sample_solvable_sr(seed: int, n: int, max_tries: int = 10_000) -> tuple[Instance, int]:
    """First solvable instance on the seed's stream, with the attempt count."""
    rng = SplitMix64(seed)
    for attempt in range(1, max_tries + 1):
        inst = random_sr(rng, n)
        if solve(inst) is not None:
            return inst, attempt
    raise GiveUp(f"no solvable instance with {n} agents in {max_tries} tries (seed {seed})")


def gen_solvable_sr(seed: int, n: int, max_tries: int = 10_000) -> Instance:
    return sample_solvable_sr(seed, n, max_tries)[0]


def gen_random_sm(seed: int, n: int) -> SMInstance:
    rng = SplitMix64(seed)
    men = tuple(tuple(rng.shuffle(list(range(n)))) for _ in range(n))
    women = tuple(tuple(rng.shuffle(list(range(n)))) for _ in range(n))
    return SMInstance(men, women)


def gen_random_costs(seed: int, inst: Instance, max_step: int = 10, offset: int = 0) -> CostFunction:
    """Strict preference-consistent costs with random gaps in ``1..max_step``."""
    rng = SplitMix64(seed)
    n = inst.n
    rows = []
    for a in range(n):
        row = [0] * n
        v = offset - rng.below(max_step + 1)
        for b in inst.prefs[a]:
            v += 1 + rng.below(max_step)
            row[b] = v
        rows.append(tuple(row))
    return CostFunction(tuple(rows)).validate(inst)


# -- graphs and the vertex-cover gadget -------------------------------------

Graph = tuple[int, list[tuple[int, int]]]


def complete_graph(n: int) -> Graph:
    return n, list(combinations(range(n), 2))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return 10, outer + spokes + inner


def prism_graph(k: int) -> Graph:
    """Circular ladder on ``2k`` vertices (3-regular for ``k >= 3``)."""
    edges = []
    for i in range(k):
        edges += [(i, (i + 1) % k), (k + i, k + (i + 1) % k), (i, k + i)]
    return 2 * k, edges


def complete_bipartite_33() -> Graph:
    return 6, [(i, 3 + j) for i in range(3) for j in range(3)]


def random_cubic_graph(seed: int, n: int, max_tries: int = 10_000) -> Graph:
    """Simple 3-regular graph from the configuration model, by rejection."""
    if n < 4 or n % 2:
        raise ValueError("a cubic graph needs an even number of vertices >= 4")
    rng = SplitMix64(seed)
    for _ in range(max_tries):
        stubs = rng.shuffle([v for v in range(n) for _ in range(3)])
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = sorted((stubs[i], stubs[i + 1]))
            if u == v or (u, v) in edges:
                ok = False
                break
            edges.add((u, v))
        if ok:
            return n, sorted(edges)
    raise GiveUp(f"no simple cubic graph on {n} vertices in {max_tries} tries")


def _check_cubic(n: int, edges: Sequence[tuple[int, int]]):
    deg = [0] * n
    seen = set()
    for u, v in edges:
        key = (min(u, v), max(u, v))
        if u == v or key in seen or not (0 <= u < n and 0 <= v < n):
            raise NotThreeRegular(f"edge ({u}, {v}) is a loop, repeat, or out of range")
        seen.add(key)
        deg[u] += 1
        deg[v] += 1
    bad = [v for v in range(n) if deg[v] != 3]
    if bad:
        raise NotThreeRegular(f"vertex {bad[0]} has degree {deg[bad[0]]}")


def mvc_gadget_poset(n: int, edges: Sequence[tuple[int, int]]) -> MirrorPoset:
    """Mirror poset whose orientations are the vertex covers of a cubic graph.

    Vertex ``v`` is pair ``v`` (element ``2v`` is ``v``, ``2v+1`` its dual);
    each edge ``{u, v}`` adds ``v < dual(u)`` and ``u < dual(v)``.
    """
    _check_cubic(n, edges)
    rel = []
    for u, v in edges:
        rel += [(2 * v, 2 * u + 1), (2 * u, 2 * v + 1)]
    return check_mirror(n, rel)


def cover_orientation(p: MirrorPoset, cover: Sequence[int]) -> Orientation:
    """Orientation whose negative part is ``U ∪ {dual(v) : v not in U}``."""
    cover = set(cover)
    neg = 0
    for v in range(p.n_pairs):
        neg |= 1 << (2 * v if v in cover else 2 * v + 1)
    return make_orientation(p, neg)
