"""Minimum-cost stable matchings for Stable Roommates instances.

The pipeline orients the reduced rotation poset with as few crossing edges
as possible, then searches one interval of the resulting semilattice per
maximal element with a max-closure computation.
"""

from __future__ import annotations

from .core import (
    CostFunction,
    Instance,
    Matching,
    SMInstance,
    egalitarian_costs,
    embed_sm,
    gale_shapley,
    is_stable,
    matching_cost,
    parse_costs,
    parse_instance,
    parse_sm,
)
from .engine import Rotation, RotationUniverse, discover_rotations, matching_from_subset, solve
from .mco import min_crossing_orientation
from .optimizer import OptimalResult, optimal_stable_matching
from .poset import MirrorPoset, Orientation, check_mirror, make_orientation, parse_mirror_poset

__version__ = "0.1.0"

__all__ = [
    "CostFunction",
    "Instance",
    "Matching",
    "MirrorPoset",
    "OptimalResult",
    "Orientation",
    "Rotation",
    "RotationUniverse",
    "SMInstance",
    "check_mirror",
    "discover_rotations",
    "egalitarian_costs",
    "embed_sm",
    "gale_shapley",
    "is_stable",
    "make_orientation",
    "matching_cost",
    "matching_from_subset",
    "min_crossing_orientation",
    "optimal_stable_matching",
    "parse_costs",
    "parse_instance",
    "parse_mirror_poset",
    "parse_sm",
    "solve",
]
