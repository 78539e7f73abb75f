"""Shared fixtures and corpora for the test suite."""

from __future__ import annotations

from pathlib import Path

from sropt.core import Instance, parse_instance
from sropt.errors import ValidationError
from sropt.generators import SplitMix64
from sropt.mco import TwoSatInstance
from sropt.poset import MirrorPoset, mirror_closure

DATA = Path(__file__).parent / "data"

# Seeds whose gen_solvable_sr instance has a nonzero minimum crossing
# distance (found by scanning; uniform instances are almost always k = 0).
K_SEEDS_10 = [467, 1263, 2394, 3776, 5554, 6316, 7548, 8443, 9467, 10853, 13085, 13826, 14014, 14196, 15563]
K_SEEDS_12 = [302, 525, 1892, 2414, 2971, 3329, 4733, 4790, 4794, 4867, 7776, 9081, 10190, 10717,
              11148, 13469, 14230, 14387, 15720, 18768, 19622]


def rho(i: int) -> int:
    """Element for the i-th rotation of the five-pair example (1-based)."""
    return 2 * (i - 1)


def rho_bar(i: int) -> int:
    return 2 * (i - 1) + 1


def mask(*elements: int) -> int:
    out = 0
    for e in elements:
        out |= 1 << e
    return out


FIG_COVERS = [
    (rho(1), rho(4)),
    (rho(1), rho(5)),
    (rho(2), rho(5)),
    (rho(2), rho_bar(4)),
    (rho(3), rho_bar(4)),
    (rho(3), rho_bar(5)),
]


def fig_poset() -> MirrorPoset:
    return mirror_closure(5, FIG_COVERS)


def _word(signs: str) -> int:
    """``"+++-+"`` -> mask with rho_i for '+' and its dual for '-'."""
    return mask(*(rho(i + 1) if c == "+" else rho_bar(i + 1) for i, c in enumerate(signs)))


# the seven complete closed subsets and the median-graph edges, as drawn
FIG_NODES = {
    1: _word("++-++"),
    2: _word("+++++"),
    3: _word("+++-+"),
    4: _word("++++-"),
    5: _word("+++--"),
    6: _word("+-++-"),
    7: _word("-++--"),
}
FIG_SUBSETS = sorted(FIG_NODES.values())
FIG_MEDIAN_EDGES = [(1, 2), (2, 3), (2, 4), (3, 5), (4, 5), (4, 6), (5, 7)]

W_ALL = mask(rho(1), rho(2), rho(3), rho(4), rho(5))
W_FIG3 = mask(rho(1), rho(2), rho_bar(3), rho(4), rho(5))


def hard_instances() -> list[tuple[str, Instance, int]]:
    """Hill-climbed N = 12 instances with their minimum crossing distance."""
    out = []
    for path in sorted(DATA.glob("*.sr")):
        text = path.read_text()
        k = int(text.splitlines()[0].rsplit(" ", 1)[1])
        out.append((path.stem, parse_instance(text), k))
    return out


def random_mirror_poset(seed: int, n_pairs: int, n_covers: int) -> MirrorPoset | None:
    """Mirror closure of random cover relations; ``None`` if they are inconsistent."""
    rng = SplitMix64(seed)
    covers = []
    for _ in range(n_covers):
        a = rng.below(2 * n_pairs)
        b = rng.below(2 * n_pairs)
        if a // 2 != b // 2:
            covers.append((a, b))
    try:
        return mirror_closure(n_pairs, covers)
    except ValidationError:
        return None


def random_two_sat(seed: int) -> TwoSatInstance:
    """Random instance with 1..12 variables whose hard part is satisfiable."""
    rng = SplitMix64(seed)
    n = 1 + rng.below(12)
    hidden = [bool(rng.below(2)) for _ in range(n)]

    def lit() -> int:
        v = 1 + rng.below(n)
        return v if rng.below(2) else -v

    hard = []
    for _ in range(rng.below(n + 1)):
        a, b = lit(), lit()
        # keep the hard part satisfiable by the hidden assignment
        if not (hidden[abs(a) - 1] == (a > 0) or hidden[abs(b) - 1] == (b > 0)):
            a = -a
        hard.append((a, b))
    soft = [(lit(), lit()) for _ in range(rng.below(3 * n + 1))]
    return TwoSatInstance(n, hard, soft, 0)
