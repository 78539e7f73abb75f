from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest

from helpers import (
    FIG_MEDIAN_EDGES,
    FIG_NODES,
    FIG_SUBSETS,
    W_ALL,
    W_FIG3,
    fig_poset,
    mask,
    random_mirror_poset,
    rho,
    rho_bar,
)
from sropt.errors import (
    CapExceeded,
    CycleDetected,
    DualComparable,
    MirrorAxiomViolated,
    NotClosed,
    NotComplete,
    ParseError,
)
from sropt.poset import (
    bits,
    check_mirror,
    complete_closed_subsets,
    crossing_edges,
    crossing_pairs,
    dual,
    format_mirror_poset,
    make_orientation,
    maximal_elements,
    median_graph,
    mirror_closure,
    parse_mirror_poset,
    semilattice_leq,
    to_dot,
    to_json,
)


def random_posets(count: int, n_pairs: int = 5, n_covers: int = 6):
    out = []
    seed = 0
    while len(out) < count:
        p = random_mirror_poset(seed, n_pairs, n_covers)
        seed += 1
        if p is not None:
            out.append(p)
    return out


CORPUS = random_posets(60) + random_posets(30, 7, 8) + [fig_poset()]


def all_orientations(p):
    return [make_orientation(p, s) for s in complete_closed_subsets(p)]


# -- validation -------------------------------------------------------------


def test_empty_poset_is_valid():
    p = check_mirror(0, [])
    assert p.size == 0
    assert complete_closed_subsets(p) == [0]


def test_fig_poset_is_valid_with_twelve_hasse_edges():
    p = fig_poset()
    assert p.n_pairs == 5
    assert len(p.hasse) == 12
    mirrored = {(dual(b), dual(a)) for a, b in [(rho(1), rho(4))]}
    assert mirrored <= set(p.hasse)


def test_dual_comparable_rejected():
    from helpers import FIG_COVERS

    with pytest.raises(DualComparable):
        mirror_closure(5, FIG_COVERS + [(rho(1), rho_bar(1))])


def test_cycle_rejected():
    with pytest.raises(CycleDetected):
        check_mirror(2, [(0, 2), (2, 0)])


def test_missing_mirror_rejected():
    with pytest.raises(MirrorAxiomViolated):
        check_mirror(2, [(0, 2)])


def test_check_mirror_closes_transitively():
    p = check_mirror(3, [(0, 2), (2, 4), (5, 3), (3, 1)])
    assert p.lt(0, 4) and p.lt(5, 1)


# -- hasse ---------------------------------------------------------------------


def test_hasse_of_chain():
    p = mirror_closure(3, [(0, 2), (2, 4)])
    assert sorted(p.hasse) == sorted([(0, 2), (2, 4), (5, 3), (3, 1)])


def test_fig_hasse_edges_exact():
    expected = set()
    for a, b in [
        (rho(1), rho(4)), (rho(1), rho(5)), (rho(2), rho(5)),
        (rho(2), rho_bar(4)), (rho(3), rho_bar(4)), (rho(3), rho_bar(5)),
    ]:
        expected |= {(a, b), (dual(b), dual(a))}
    assert set(fig_poset().hasse) == expected


@pytest.mark.parametrize("p", CORPUS[:40])
def test_hasse_matches_networkx_reduction_and_round_trips(p):
    g = nx.DiGraph(p.relations())
    g.add_nodes_from(range(p.size))
    assert set(p.hasse) == set(nx.transitive_reduction(g).edges)
    q = check_mirror(p.n_pairs, p.hasse)
    assert q.relations() == p.relations()


# -- closed subsets and the median graph ---------------------------------------


def test_fig_has_seven_subsets():
    assert complete_closed_subsets(fig_poset()) == FIG_SUBSETS


@pytest.mark.parametrize("k", [0, 1, 3, 6])
def test_free_pairs_give_power_of_two(k):
    assert len(complete_closed_subsets(check_mirror(k, []))) == 2**k


def test_subset_cap():
    with pytest.raises(CapExceeded):
        complete_closed_subsets(check_mirror(4, []), cap=3)


def test_fig_median_graph_matches_drawing():
    g = median_graph(fig_poset())
    expected = nx.Graph([(FIG_NODES[a], FIG_NODES[b]) for a, b in FIG_MEDIAN_EDGES])
    assert set(g.nodes) == set(expected.nodes)
    assert {frozenset(e) for e in g.edges} == {frozenset(e) for e in expected.edges}


@pytest.mark.parametrize("p", CORPUS[::4])
def test_median_graph_distance_and_unique_medians(p):
    g = median_graph(p)
    dist = dict(nx.all_pairs_shortest_path_length(g))
    nodes = sorted(g.nodes)
    for s, t in combinations(nodes, 2):
        assert dist[s][t] == bin(s & ~t).count("1")
    if len(nodes) <= 20:
        for a, b, c in combinations(nodes, 3):
            medians = [
                m for m in nodes
                if dist[a][m] + dist[m][b] == dist[a][b]
                and dist[b][m] + dist[m][c] == dist[b][c]
                and dist[a][m] + dist[m][c] == dist[a][c]
            ]
            assert len(medians) == 1


# -- orientations ----------------------------------------------------------------


def test_fig_orientations_valid():
    p = fig_poset()
    assert make_orientation(p, W_ALL).neg == W_ALL
    assert make_orientation(p, [rho(1), rho(2), rho_bar(3), rho(4), rho(5)]).neg == W_FIG3


def test_orientation_errors():
    p = fig_poset()
    with pytest.raises(NotComplete):
        make_orientation(p, mask(rho(1), rho(2), rho(3), rho(4)))
    with pytest.raises(NotClosed):
        make_orientation(p, mask(rho(1), rho(2), rho(3), rho_bar(4), rho(5)) ^ mask(rho(2), rho_bar(2)))


def test_fig_crossing_edges_at_w():
    o = make_orientation(fig_poset(), W_ALL)
    # rho_i is rho_i^- and its dual rho_i^+ at this base
    expected = {
        (rho(2), rho_bar(4)), (rho(4), rho_bar(2)),
        (rho(3), rho_bar(4)), (rho(4), rho_bar(3)),
        (rho(3), rho_bar(5)), (rho(5), rho_bar(3)),
    }
    assert set(crossing_edges(o)) == expected
    assert len(crossing_pairs(o)) == 3


def test_fig3_crossing_edges():
    o = make_orientation(fig_poset(), W_FIG3)
    assert set(crossing_edges(o)) == {(rho(2), rho_bar(4)), (rho(4), rho_bar(2))}


def test_no_relations_no_crossings():
    p = check_mirror(3, [])
    assert crossing_edges(make_orientation(p, 0b010101)) == []


@pytest.mark.parametrize("p", CORPUS)
def test_crossing_edges_even_and_dual_closed(p):
    for o in all_orientations(p):
        edges = set(crossing_edges(o))
        assert len(edges) % 2 == 0
        assert edges == {(dual(b), dual(a)) for a, b in edges}


def test_fig_semilattice_root():
    o = make_orientation(fig_poset(), W_ALL)
    for t in FIG_SUBSETS:
        assert semilattice_leq(o, W_ALL, t)


@pytest.mark.parametrize("p", CORPUS[::5])
def test_semilattice_leq_matches_shortest_paths(p):
    g = median_graph(p)
    dist = dict(nx.all_pairs_shortest_path_length(g))
    for o in all_orientations(p):
        r = o.neg
        for s in g.nodes:
            for t in g.nodes:
                assert semilattice_leq(o, s, t) == (dist[r][t] == dist[r][s] + dist[s][t])


# -- maximal elements -------------------------------------------------------------


def test_fig_maximal_elements():
    p = fig_poset()
    assert maximal_elements(make_orientation(p, W_ALL)) == sorted(
        [FIG_NODES[1], FIG_NODES[6], FIG_NODES[7]]
    )
    assert maximal_elements(make_orientation(p, W_FIG3)) == sorted([FIG_NODES[6], FIG_NODES[7]])


def test_zero_crossings_single_maximal():
    p = check_mirror(3, [(0, 2), (3, 1)])
    o = make_orientation(p, 0b010101)
    assert crossing_edges(o) == []
    assert maximal_elements(o) == [o.pos]


def test_crossing_cap():
    with pytest.raises(CapExceeded):
        maximal_elements(make_orientation(fig_poset(), W_ALL), cap=2)


def _brute_maximal(o, subsets):
    return sorted(
        t for t in subsets
        if not any(t != u and semilattice_leq(o, t, u) for u in subsets)
    )


@pytest.mark.parametrize("p", CORPUS)
def test_maximal_elements_exact_bound_and_coverage(p):
    subsets = complete_closed_subsets(p)
    for o in all_orientations(p):
        maxes = maximal_elements(o)
        assert maxes == _brute_maximal(o, subsets)
        assert len(maxes) <= 3 ** (len(crossing_edges(o)) // 2)
        for s in subsets:
            assert any(semilattice_leq(o, s, t) for t in maxes)


@pytest.mark.parametrize("p", CORPUS)
def test_every_subset_holds_a_pattern(p):
    # each complete closed subset contains one of the three patterns per crossing pair
    for o in all_orientations(p):
        for (a, b), _ in crossing_pairs(o):
            patterns = [mask(dual(a), dual(b)), mask(a, b), mask(a, dual(b))]
            for s in complete_closed_subsets(p):
                assert any(pat & ~s == 0 for pat in patterns)


def _closed_in(p, sub, within):
    return all(not (sub >> e & 1) or (p.below[e] & within) & ~sub == 0 for e in bits(sub))


@pytest.mark.parametrize("p", CORPUS[::3])
def test_interval_matches_closed_subsets_of_positive_part(p):
    subsets = complete_closed_subsets(p)
    for o in all_orientations(p):
        for t in maximal_elements(o):
            tp = t & o.pos
            interval = {s for s in subsets if semilattice_leq(o, s, t)}
            built = set()
            elems = bits(tp)
            for r in range(len(elems) + 1):
                for combo in combinations(elems, r):
                    sp = mask(*combo)
                    if _closed_in(p, sp, tp):
                        s = sp | (o.neg & ~p.dual_mask(sp))
                        assert p.is_complete(s) and p.is_closed(s)
                        built.add(s)
            assert built == interval


@pytest.mark.parametrize("p", CORPUS[::2])
def test_negative_below_positive_has_crossing_edge_on_a_chain(p):
    for o in all_orientations(p):
        hasse = nx.DiGraph(p.hasse)
        hasse.add_nodes_from(range(p.size))
        cross = set(crossing_edges(o))
        for a in bits(o.neg):
            for b in bits(o.pos):
                if p.lt(a, b):
                    assert any(
                        any((u, v) in cross for u, v in zip(path, path[1:]))
                        for path in nx.all_simple_paths(hasse, a, b)
                    )


# -- text formats ------------------------------------------------------------------


def test_parse_and_format_round_trip():
    text = "mp 5\n1 < 4\n1 < 5\n2 < 5\n2 < -4\n3 < -4\n3 < -5\n"
    p = parse_mirror_poset(text)
    assert p == fig_poset()
    assert parse_mirror_poset(format_mirror_poset(p)) == p


def test_parse_errors_name_line():
    with pytest.raises(ParseError, match="line 2"):
        parse_mirror_poset("mp 2\n1 < 7\n")
    with pytest.raises(ParseError, match="line 1"):
        parse_mirror_poset("poset 2\n")


def test_emitters():
    p = fig_poset()
    o = make_orientation(p, W_ALL)
    dot = to_dot(p, o)
    assert dot.startswith("digraph") and dot.count("color=red") == 6
    js = to_json(p)
    assert js["n_pairs"] == 5 and len(js["hasse"]) == 12
