from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import G, graphs
from oracles import brute_has_tk5, brute_has_tk33
from tk5cert.graph import Graph
from tk5cert.planarity import (
    KuratowskiWitness,
    PlanarEmbedding,
    _try_family,
    check_boundary,
    disc_planar,
    euler_charge_sum,
    group_candidates,
    kuratowski_from_edges,
    planarity,
    three_planar,
    verify_embedding,
    verify_three_planar,
)
from tk5cert.subdivision import K5_PATTERN, K33_PATTERN, verify_subdivision

PLATONIC = {
    "tetrahedron": nx.tetrahedral_graph(),
    "cube": nx.cubical_graph(),
    "octahedron": nx.octahedral_graph(),
    "dodecahedron": nx.dodecahedral_graph(),
    "icosahedron": nx.icosahedral_graph(),
}


def test_k4_embeds_with_four_faces():
    emb = planarity(G(nx.complete_graph(4)))
    assert isinstance(emb, PlanarEmbedding)
    assert len(emb.faces) == 4


def test_k5_witness_uses_single_edges():
    w = planarity(G(nx.complete_graph(5)))
    assert isinstance(w, KuratowskiWitness) and w.kind == "TK5"
    assert all(len(p) == 2 for p in w.paths.values())


def test_k33_witness():
    g = G(nx.complete_bipartite_graph(3, 3))
    w = planarity(g)
    assert w.kind == "TK33"
    assert verify_subdivision(g, w.branch, w.paths, K33_PATTERN)


def test_petersen_is_tk33_and_has_no_tk5():
    g = G(nx.petersen_graph())
    w = planarity(g)
    assert isinstance(w, KuratowskiWitness) and w.kind == "TK33"
    assert brute_has_tk33(g)
    assert not brute_has_tk5(g)


def test_planarity_matches_kuratowski_brute_force(atlas7):
    for g in atlas7:
        out = planarity(g)
        brute = brute_has_tk5(g) or brute_has_tk33(g)
        assert isinstance(out, KuratowskiWitness) == brute
        if isinstance(out, PlanarEmbedding):
            assert verify_embedding(g, out)
        else:
            assert verify_subdivision(g, out.branch, out.paths, out.pattern)


@given(graphs(8, 9, p=0.45))
def test_planarity_matches_brute_force_random(g):
    out = planarity(g)
    assert isinstance(out, KuratowskiWitness) == (brute_has_tk5(g) or brute_has_tk33(g))


def test_kuratowski_from_subdivided_k33():
    # K3,3 with edge 0-3 subdivided by vertex 6
    edges = [(a, b) for a in range(3) for b in range(3, 6) if (a, b) != (0, 3)] + [(0, 6), (6, 3)]
    w = kuratowski_from_edges(edges)
    assert w.kind == "TK33"
    assert w.paths[(0, 3)] == (0, 6, 3)


def test_embedding_verifier_rejects_bad_rotation():
    g = G(nx.complete_graph(4))
    emb = planarity(g)
    bad = PlanarEmbedding((emb.rotation[0][::-1],) + emb.rotation[1:], emb.outer)
    # reversing one rotation of K4 breaks Euler's formula
    assert not verify_embedding(g, bad)
    assert not verify_embedding(g, PlanarEmbedding(emb.rotation[:3], emb.outer))


def test_embedding_json_roundtrip():
    emb = planarity(G(nx.cubical_graph()))
    assert PlanarEmbedding.from_json(emb.to_json()) == emb


def test_disc_planar_examples():
    c5 = G(nx.cycle_graph(5))
    emb = disc_planar(c5, [0, 1, 2, 3, 4])
    assert emb is not None and check_boundary(c5, emb, [0, 1, 2, 3, 4])
    assert disc_planar(G(nx.complete_graph(4)), [0, 1, 2, 3]) is None
    grid = G(nx.grid_2d_graph(3, 3))
    border = [0, 1, 2, 5, 8, 7, 6, 3]
    emb = disc_planar(grid, border)
    assert emb is not None and verify_embedding(grid, emb) and check_boundary(grid, emb, border)
    assert disc_planar(grid, [0, 2, 1, 5, 8, 7, 6, 3]) is None


def test_disc_planar_c4_crossing_order():
    c4 = G(nx.cycle_graph(4))
    assert disc_planar(c4, [0, 1, 2, 3]) is not None
    assert disc_planar(c4, [0, 2, 1, 3]) is None


def test_disc_planar_rejects_repeated_boundary():
    with pytest.raises(ValueError):
        disc_planar(G(nx.cycle_graph(4)), [0, 0, 1])


@given(graphs(3, 7, p=0.5), st.data())
def test_disc_planar_invariant_under_dihedral_moves(g, data):
    k = data.draw(st.integers(1, min(g.n, 5)))
    seq = data.draw(st.permutations(range(g.n)))[:k]
    shift = data.draw(st.integers(0, k - 1))
    rotated = seq[shift:] + seq[:shift]
    base = disc_planar(g, seq) is not None
    assert (disc_planar(g, rotated) is not None) == base
    assert (disc_planar(g, rotated[::-1]) is not None) == base


def _brute_disc_planar(g: Graph, boundary) -> bool:
    """Independent check: g plus a hub joined to the boundary and a cycle
    through the boundary in order must be planar (boundary size >= 3)."""
    h = g.to_networkx()
    hub = g.n
    for b in boundary:
        h.add_edge(hub, b)
    k = len(boundary)
    for i in range(k):
        h.add_edge(boundary[i], boundary[(i + 1) % k])
    return nx.check_planarity(h)[0]


@given(graphs(3, 8, p=0.45), st.data())
def test_disc_planar_matches_wheel_oracle(g, data):
    k = data.draw(st.integers(3, min(g.n, 6)))
    seq = data.draw(st.permutations(range(g.n)))[:k]
    assert (disc_planar(g, seq) is not None) == _brute_disc_planar(g, seq)


def test_three_planar_empty_family_for_disc_planar_instance():
    c5 = G(nx.cycle_graph(5))
    st_ = three_planar(c5, [0, 1, 2, 3, 4])
    assert st_ is not None and st_.groups == ()
    assert verify_three_planar(c5, [0, 1, 2, 3, 4], st_)


def test_three_planar_k4_triangle_boundary():
    k4 = G(nx.complete_graph(4))
    st_ = three_planar(k4, [0, 1, 2])
    assert st_ is not None and verify_three_planar(k4, [0, 1, 2], st_)
    # the single-group family {3} also works: p(G, {3}) is the facial triangle 012
    cands = group_candidates(k4, 0b0111)
    assert [c for c, _ in cands] == [0b1000]
    grouped = _try_family(k4, (0, 1, 2), cands)
    assert grouped is not None and grouped.groups == ((3,),)
    assert grouped.reduced.edge_count == 3
    assert verify_three_planar(k4, (0, 1, 2), grouped)


def test_three_planar_k5_four_boundary_fails():
    k5 = G(nx.complete_graph(5))
    for boundary in combinations(range(5), 4):
        assert three_planar(k5, list(boundary)) is None


def test_three_planar_needs_groups():
    # K3,3 between {4, 5, 6} and {0, 1, 2}, plus 3 joined to 0 and 2
    edges = [(a, b) for a in (4, 5, 6) for b in (0, 1, 2)] + [(3, 0), (3, 2)]
    g = Graph.from_edges(7, edges)
    boundary = [0, 1, 2, 3]
    assert disc_planar(g, boundary) is None
    st_ = three_planar(g, boundary)
    assert st_ is not None and st_.groups
    assert verify_three_planar(g, boundary, st_)
    # a crossing boundary order cannot be repaired by grouping
    assert three_planar(g, [0, 2, 1, 3]) is None


def test_three_planar_verifier_catches_tampering():
    k4 = G(nx.complete_graph(4))
    st_ = _try_family(k4, (0, 1, 2), group_candidates(k4, 0b0111))
    from dataclasses import replace

    assert not verify_three_planar(k4, (0, 1, 2), replace(st_, groups=((3, 0),)))
    assert not verify_three_planar(k4, (0, 1, 3), st_)


@pytest.mark.parametrize("name", sorted(PLATONIC))
def test_euler_charge_platonic(name):
    emb = planarity(G(PLATONIC[name]))
    assert euler_charge_sum(emb) == -8


def test_euler_charge_worked_values():
    cube = planarity(G(nx.cubical_graph()))
    assert sum(len(r) - 4 for r in cube.rotation) == 8 * (3 - 4)
    assert sum(len(f) - 4 for f in cube.faces) == 6 * (4 - 4)
    tri = planarity(G(nx.cycle_graph(3)))
    assert len(tri.faces) == 2 and euler_charge_sum(tri) == -8
    dod = planarity(G(nx.dodecahedral_graph()))
    assert sorted(len(f) for f in dod.faces) == [5] * 12


def test_euler_charge_counts_bridges_twice():
    emb = planarity(G(nx.path_graph(4)))
    assert len(emb.faces) == 1 and len(emb.faces[0]) == 6
    assert euler_charge_sum(emb) == -8
    assert euler_charge_sum(planarity(Graph.empty(1))) == -8


@given(graphs(1, 9, p=0.4))
def test_euler_charge_on_connected_planar(g):
    emb = planarity(g)
    if isinstance(emb, PlanarEmbedding) and g.is_connected():
        assert euler_charge_sum(emb) == -8
