"""Minimum-cost stable matching for SR instances.

Pipeline: rotation poset -> minimum crossing orientation -> maximal
elements of the rooted semilattice -> one max-closure local optimum per
maximal element -> cheapest of those.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .closure import max_closure
from .core import CostFunction, Instance, Matching, check_int64, matching_cost
from .engine import (
    DEFAULT_TABLE_CAP,
    RotationUniverse,
    discover_rotations,
    matching_from_subset,
    rotation_cost,
)
from .errors import NotInBase
from .mco import DEFAULT_K_MAX, McoResult, min_crossing_orientation
from .poset import DEFAULT_CROSSING_CAP, Orientation, bits, maximal_elements


@dataclass
class OptimalResult:
    matching: Matching
    cost: int
    k: int
    maximal_count: int
    per_interval: list[tuple[int, int]] = field(default_factory=list)
    subset: int = 0
    mco: McoResult | None = field(default=None, repr=False)
    universe: RotationUniverse | None = field(default=None, repr=False)


def local_optimum(
    o: Orientation, costs: Mapping[int, int], t: int, root_cost: int = 0
) -> tuple[int, int]:
    """Cheapest complete closed subset in the interval ``[o.neg, t]``.

    ``costs`` maps poset elements to rotation costs and ``root_cost`` is the
    cost of the matching at ``o.neg``.  Returns ``(subset, cost)``.
    """
    p = o.base
    if t & ~p.full or not p.is_complete(t) or not p.is_closed(t):
        raise NotInBase("interval end must be a complete closed subset of the base")
    positives = bits(t & o.pos)
    index = {e: i for i, e in enumerate(positives)}
    weights = [costs[e] for e in positives]
    mask = t & o.pos
    requires = [(index[b], index[a]) for a, b in p.induced_relations(mask)]
    chosen, gain = max_closure(weights, requires)
    s_pos = 0
    for i in chosen:
        s_pos |= 1 << positives[i]
    s = s_pos | (o.neg & ~p.dual_mask(s_pos))
    return s, check_int64(root_cost - gain)


def optimal_stable_matching(
    inst: Instance,
    c: CostFunction,
    k_max: int = DEFAULT_K_MAX,
    max_tables: int = DEFAULT_TABLE_CAP,
    crossing_cap: int = DEFAULT_CROSSING_CAP,
) -> OptimalResult | None:
    """Minimum-cost stable matching of ``inst`` under ``c``; ``None`` if unsolvable.

    Equal-cost local optima are broken by the lexicographically smallest
    sorted pair list.
    """
    c.validate(inst)
    u = discover_rotations(inst, max_tables=max_tables)
    if u is None:
        return None
    p = u.reduced
    res = min_crossing_orientation(p, k_max)
    o = res.orientation
    root = matching_from_subset(u, o.neg)
    root_cost = matching_cost(c, root)
    costs = {e: rotation_cost(c, u.rotations[r]) for e, r in enumerate(u.rotation_of)}
    per_interval = []
    best = None
    for t in maximal_elements(o, crossing_cap):
        s, cost = local_optimum(o, costs, t, root_cost)
        per_interval.append((t, cost))
        m = matching_from_subset(u, s)
        key = (cost, m.pair_list())
        if best is None or key < best[0]:
            best = (key, m, s)
    (cost, _), m, s = best
    return OptimalResult(
        matching=m,
        cost=cost,
        k=res.crossings,
        maximal_count=len(per_interval),
        per_interval=per_interval,
        subset=s,
        mco=res,
        universe=u,
    )


def subset_names(u: RotationUniverse, mask: int) -> list[str]:
    return [element_name(u, e) for e in bits(mask)]


def element_name(u: RotationUniverse, e: int) -> str:
    """``r<id>`` using 1-based rotation ids."""
    return f"r{u.rotation_of[e] + 1}"

