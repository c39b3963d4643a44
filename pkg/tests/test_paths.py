from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import G, graphs
from oracles import brute_cycle_through, brute_fan, brute_linkage, brute_triple_kinds
from tk5cert.errors import HypothesisFailed, NotTwoConnected
from tk5cert.graph import Graph, vertex_connectivity
from tk5cert.paths import (
    FORCED,
    FREE,
    INDEPENDENT,
    NO_TRIPLE,
    CycleObstruction,
    PathSystem,
    cycle_through_three,
    disjoint_paths,
    fan,
    forced_middle_triple,
    perfect_reroute,
    two_dp_or_three_planar,
    verify_cycle,
    verify_cycle_obstruction,
    verify_path_system,
    verify_two_dp,
)


def test_disjoint_paths_examples():
    c6 = G(nx.cycle_graph(6))
    ps = disjoint_paths(c6, [(0, 1), (3, 4)])
    assert ps.paths == ((0, 1), (3, 4))
    assert disjoint_paths(c6, [(0, 3), (1, 4)]) is None
    # a trivial pair is its own path; shared terminals across pairs are refused
    assert disjoint_paths(c6, [(2, 2), (0, 1)]).paths == ((2,), (0, 1))
    assert disjoint_paths(c6, [(0, 1), (1, 2)]) is None


def test_independent_paths_share_ends():
    k4 = G(nx.complete_graph(4))
    ps = disjoint_paths(k4, [(0, 1), (0, 2), (0, 3)], INDEPENDENT)
    assert ps.paths == ((0, 1), (0, 2), (0, 3))
    with pytest.raises(ValueError):
        disjoint_paths(k4, [(0, 0)], INDEPENDENT)
    with pytest.raises(ValueError):
        disjoint_paths(k4, [(0, 1), (1, 0)], INDEPENDENT)


def test_path_system_verifier():
    p4 = G(nx.path_graph(4))
    assert verify_path_system(p4, PathSystem(((0, 1, 2),)), [(0, 2)])
    assert verify_path_system(p4, PathSystem(((0, 2),))).clause == "adjacency"
    assert verify_path_system(p4, PathSystem(((0, 1), (1, 2)))).clause == "disjointness"
    assert verify_path_system(p4, PathSystem(((0, 1), (1, 2)), INDEPENDENT))
    assert verify_path_system(p4, PathSystem(((0, 1, 2), (1, 2)), INDEPENDENT)).clause == "independence"
    assert verify_path_system(p4, PathSystem(((0, 1),)), [(1, 0)]).clause == "endpoints"


@given(graphs(4, 8, p=0.4), st.data())
def test_disjoint_paths_match_brute_force(g, data):
    k = data.draw(st.integers(1, min(3, g.n // 2)))
    verts = data.draw(st.permutations(range(g.n)))[: 2 * k]
    pairs = list(zip(verts[::2], verts[1::2]))
    got = disjoint_paths(g, pairs)
    assert (got is None) == (brute_linkage(g, pairs) is None)


@given(graphs(4, 8, p=0.4), st.data())
def test_independent_paths_match_brute_force(g, data):
    k = data.draw(st.integers(1, 3))
    cand = list(combinations(range(g.n), 2))
    pairs = data.draw(st.lists(st.sampled_from(cand), min_size=1, max_size=k, unique=True))
    got = disjoint_paths(g, pairs, INDEPENDENT)
    assert (got is None) == (brute_linkage(g, pairs, INDEPENDENT) is None)


def test_two_dp_examples():
    c4 = G(nx.cycle_graph(4))
    out = two_dp_or_three_planar(c4, 0, 1, 3, 2)
    assert out.paths is not None and verify_two_dp(c4, (0, 1, 3, 2), out)
    out = two_dp_or_three_planar(c4, 0, 1, 2, 3)
    assert out.obstruction is not None and verify_two_dp(c4, (0, 1, 2, 3), out)


def test_two_dp_wheel():
    # W6: hub 0, rim 1..5; rim terminals in cyclic order cannot be linked crosswise
    w = G(nx.wheel_graph(6))
    out = two_dp_or_three_planar(w, 1, 2, 3, 4)
    assert out.paths is None and verify_two_dp(w, (1, 2, 3, 4), out)
    out = two_dp_or_three_planar(w, 1, 3, 2, 4)
    assert out.paths is not None


def test_two_dp_k5_always_links():
    k5 = G(nx.complete_graph(5))
    for s1, s2, t1, t2 in [(0, 1, 2, 3), (0, 2, 1, 3), (1, 3, 4, 0)]:
        assert two_dp_or_three_planar(k5, s1, s2, t1, t2).paths is not None


def test_two_dp_verifier_rejects_both_or_neither():
    from tk5cert.paths import TwoDPOutcome

    c4 = G(nx.cycle_graph(4))
    assert not verify_two_dp(c4, (0, 1, 2, 3), TwoDPOutcome())


@given(graphs(4, 7, p=0.5), st.data())
def test_two_dp_matches_brute_force(g, data):
    s1, s2, t1, t2 = data.draw(st.permutations(range(g.n)))[:4]
    out = two_dp_or_three_planar(g, s1, s2, t1, t2)
    assert verify_two_dp(g, (s1, s2, t1, t2), out)
    assert (out.paths is not None) == (brute_linkage(g, [(s1, t1), (s2, t2)]) is not None)


def test_fan_examples():
    ico = G(nx.icosahedral_graph())
    # pick the antipode: the only vertex at distance 3 from 0
    dist = nx.single_source_shortest_path_length(ico.to_networkx(), 0)
    far = max(dist, key=dist.get)
    targets = sorted(ico.neighbors(far))
    ps = fan(ico, 0, targets, 5)
    assert ps is not None and len(ps.paths) == 5
    assert sorted(p[-1] for p in ps.paths) == targets
    assert verify_path_system(ico, ps)
    assert fan(G(nx.cycle_graph(6)), 0, [2, 3, 4], 3) is None
    with pytest.raises(ValueError):
        fan(ico, 0, [0, 1], 1)


@given(graphs(4, 8, p=0.45), st.data())
def test_fan_matches_brute_force(g, data):
    u = data.draw(st.integers(0, g.n - 1))
    others = [v for v in range(g.n) if v != u]
    targets = data.draw(st.lists(st.sampled_from(others), min_size=1, max_size=4, unique=True))
    n = data.draw(st.integers(1, len(targets)))
    got = fan(g, u, targets, n)
    assert (got is not None) == brute_fan(g, u, targets, n)
    if got is not None:
        assert verify_path_system(g, got)
        assert all(p[0] == u and p[-1] in targets for p in got.paths)
        assert not set().union(*(set(p[1:-1]) for p in got.paths)) & set(targets)


def test_perfect_reroute_icosahedron():
    ico = G(nx.icosahedral_graph())
    dist = nx.single_source_shortest_path_length(ico.to_networkx(), 0)
    far = max(dist, key=dist.get)
    targets = sorted(ico.neighbors(far))
    anchors = targets[3:1:-1]
    ps = perfect_reroute(ico, 0, targets, anchors, 5)
    assert [p[-1] for p in ps.paths[:2]] == anchors
    assert len(ps.paths) == 5 and verify_path_system(ico, ps)


def test_perfect_reroute_failure_labels():
    c6 = G(nx.cycle_graph(6))
    with pytest.raises(HypothesisFailed) as exc:
        perfect_reroute(c6, 0, [2, 3, 4], [3], 1)
    assert exc.value.which == "anchored_fan"
    with pytest.raises(HypothesisFailed) as exc:
        perfect_reroute(c6, 0, [2, 3, 4], [2], 3)
    assert exc.value.which == "fan"


@given(graphs(5, 8, p=0.5), st.data())
def test_perfect_reroute_matches_brute_force(g, data):
    u = data.draw(st.integers(0, g.n - 1))
    others = [v for v in range(g.n) if v != u]
    targets = data.draw(st.lists(st.sampled_from(others), min_size=2, max_size=4, unique=True))
    n = data.draw(st.integers(1, len(targets)))
    k = data.draw(st.integers(0, n))
    anchors = targets[:k]
    # an anchored k-fan and an n-fan (both avoiding all targets internally)
    # exist exactly when an n-fan through all anchors does
    expected = brute_fan(g, u, targets, n, anchors)
    hyp = brute_fan(g, u, targets, k, anchors) and brute_fan(g, u, targets, n)
    assert expected == hyp
    if not hyp:
        with pytest.raises(HypothesisFailed):
            perfect_reroute(g, u, targets, anchors, n)
        return
    ps = perfect_reroute(g, u, targets, anchors, n)
    assert [p[-1] for p in ps.paths[:k]] == list(anchors)
    assert len({p[-1] for p in ps.paths}) == n and verify_path_system(g, ps)
    assert not set().union(*(set(p[1:-1]) for p in ps.paths)) & set(targets)


def _theta() -> Graph:
    # two hubs 0, 1 joined by three paths through 2, 3, 4
    return Graph.from_edges(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])


def _hub_gadget() -> Graph:
    # triangle 1 2 3, hub 0 joined to it; y = 4 5 6 each see the hub and one triangle vertex
    edges = [(1, 2), (2, 3), (3, 1), (0, 1), (0, 2), (0, 3), (4, 0), (4, 1), (5, 0), (5, 2), (6, 0), (6, 3)]
    return Graph.from_edges(7, edges)


def _subdivided_prism() -> Graph:
    # triangles 0 1 2 and 3 4 5, matching i -> i+3 subdivided by 6 + i
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]
    edges += [(i, 6 + i) for i in range(3)] + [(6 + i, 3 + i) for i in range(3)]
    return Graph.from_edges(9, edges)


def test_cycle_through_three_examples():
    c = cycle_through_three(G(nx.cycle_graph(6)), 0, 2, 4)
    assert isinstance(c, tuple) and verify_cycle(G(nx.cycle_graph(6)), c, (0, 2, 4))
    c = cycle_through_three(G(nx.petersen_graph()), 0, 5, 7)
    assert isinstance(c, tuple)


@pytest.mark.parametrize(
    "graph,ys,kind",
    [(_theta, (2, 3, 4), "i"), (_hub_gadget, (4, 5, 6), "ii"), (_subdivided_prism, (6, 7, 8), "iii")],
)
def test_cycle_obstruction_kinds(graph, ys, kind):
    g = graph()
    out = cycle_through_three(g, *ys)
    assert isinstance(out, CycleObstruction) and out.kind == kind
    assert verify_cycle_obstruction(g, ys, out)
    assert not brute_cycle_through(g, ys)


def test_cycle_obstruction_verifier_rejects_tampering():
    g = _subdivided_prism()
    out = cycle_through_three(g, 6, 7, 8)
    from dataclasses import replace

    assert not verify_cycle_obstruction(g, (6, 7, 8), replace(out, kind="ii", hub=0))
    assert not verify_cycle_obstruction(g, (6, 7, 8), replace(out, bridges=(), cuts=out.cuts[:2]))
    bad_pieces = (out.pieces[0] + (0,),) + out.pieces[1:]
    assert not verify_cycle_obstruction(g, (6, 7, 8), replace(out, pieces=bad_pieces))


def test_cycle_through_three_needs_two_connected():
    with pytest.raises(NotTwoConnected):
        cycle_through_three(G(nx.path_graph(5)), 0, 2, 4)


@given(graphs(4, 8, p=0.5), st.data())
def test_cycle_through_three_matches_brute_force(g, data):
    assume(vertex_connectivity(g)[0] >= 2)
    ys = data.draw(st.permutations(range(g.n)))[:3]
    out = cycle_through_three(g, *ys)
    assert isinstance(out, tuple) == brute_cycle_through(g, ys)
    if isinstance(out, tuple):
        assert verify_cycle(g, out, ys)
    else:
        assert verify_cycle_obstruction(g, ys, out)


def test_forced_middle_triple_examples():
    grid = G(nx.grid_2d_graph(3, 5))
    out = forced_middle_triple(grid, (0, 5, 10), (4, 9, 14))
    assert out.kind == FORCED
    assert out.paths.paths[1][0] == 5 and out.paths.paths[1][-1] == 9
    k6 = G(nx.complete_graph(6))
    out = forced_middle_triple(k6, (0, 1, 2), (3, 4, 5))
    assert out.kind == FREE and out.paths.paths[1][-1] != 4
    matching = Graph.from_edges(6, [(0, 3), (1, 4), (2, 5)])
    assert forced_middle_triple(matching, (0, 1, 2), (3, 4, 5)).kind == FORCED
    assert forced_middle_triple(Graph.empty(6), (0, 1, 2), (3, 4, 5)).kind == NO_TRIPLE


def test_forced_middle_triple_rejects_equal_triples():
    p5 = G(nx.path_graph(5))
    with pytest.raises(ValueError):
        forced_middle_triple(p5, (0, 1, 2), (2, 1, 0))


@given(graphs(6, 8, p=0.5), st.data())
def test_forced_middle_triple_matches_brute_force(g, data):
    verts = data.draw(st.permutations(range(g.n)))
    frm, to = tuple(verts[:3]), tuple(verts[3:6])
    out = forced_middle_triple(g, frm, to)
    kinds = brute_triple_kinds(g, frm, to)
    expected = NO_TRIPLE if not kinds else (FREE if False in kinds else FORCED)
    assert out.kind == expected
    if out.paths is not None:
        assert verify_path_system(g, out.paths, list(zip(frm, [p[-1] for p in out.paths.paths])))
        assert sorted(p[-1] for p in out.paths.paths) == sorted(to)
