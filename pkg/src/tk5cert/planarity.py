"""Planarity with embedding-or-Kuratowski output, disc embeddings with a
prescribed boundary order, 3-planar structures, and the Euler charge sum.

Planarity testing itself is delegated to networkx; everything it returns is
re-checked here (face counting for embeddings, path verification for
Kuratowski subdivisions) before being handed out.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Sequence

import networkx as nx

from .bits import iter_bits, popcount, to_mask
from .errors import BudgetExceeded
from .graph import Graph
from .subdivision import K5_PATTERN, K33_PATTERN, PASS, Verdict, pair_key, verify_subdivision

MAX_THREE_PLANAR_N = 24
DEFAULT_FAMILY_BUDGET = 20_000

Dart = tuple[int, int]


@dataclass(frozen=True)
class PlanarEmbedding:
    """Rotation system plus one outer-face dart per component with edges."""

    rotation: tuple[tuple[int, ...], ...]
    outer: tuple[Dart, ...] = ()

    @cached_property
    def _pos(self) -> list[dict[int, int]]:
        return [{w: i for i, w in enumerate(rot)} for rot in self.rotation]

    def succ(self, v: int, u: int) -> int:
        rot = self.rotation[v]
        return rot[(self._pos[v][u] + 1) % len(rot)]

    def next_dart(self, dart: Dart) -> Dart:
        u, v = dart
        return (v, self.succ(v, u))

    def face(self, dart: Dart) -> list[Dart]:
        walk = [dart]
        d = self.next_dart(dart)
        while d != dart:
            walk.append(d)
            d = self.next_dart(d)
        return walk

    @cached_property
    def faces(self) -> list[list[Dart]]:
        seen: set[Dart] = set()
        out = []
        for u, rot in enumerate(self.rotation):
            for v in rot:
                if (u, v) not in seen:
                    f = self.face((u, v))
                    seen.update(f)
                    out.append(f)
        return out

    def outer_walks(self) -> list[list[int]]:
        return [[d[0] for d in self.face(dart)] for dart in self.outer]

    def to_json(self) -> dict:
        return {
            "rotation": {str(v): list(rot) for v, rot in enumerate(self.rotation)},
            "outer_face": [list(d) for d in self.outer],
        }

    @classmethod
    def from_json(cls, data: dict) -> PlanarEmbedding:
        rot = data["rotation"]
        n = len(rot)
        return cls(
            tuple(tuple(rot[str(v)]) for v in range(n)),
            tuple(tuple(d) for d in data.get("outer_face", [])),
        )


@dataclass(frozen=True)
class KuratowskiWitness:
    kind: str  # "TK5" or "TK33"
    branch: tuple[int, ...]
    paths: dict[tuple[int, int], tuple[int, ...]]

    @property
    def pattern(self) -> tuple[tuple[int, int], ...]:
        return K5_PATTERN if self.kind == "TK5" else K33_PATTERN

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "branch": list(self.branch),
            "paths": {f"{u}-{v}": list(p) for (u, v), p in sorted(self.paths.items())},
        }


@dataclass(frozen=True)
class ThreePlanarStructure:
    boundary: tuple[int, ...]
    groups: tuple[tuple[int, ...], ...]
    # kept[i] is the original vertex behind index i of ``reduced``
    kept: tuple[int, ...]
    reduced: Graph
    embedding: PlanarEmbedding

    def to_json(self) -> dict:
        return {
            "boundary": list(self.boundary),
            "groups": [list(a) for a in self.groups],
            "kept": list(self.kept),
            "reduced_edges": [[self.kept[u], self.kept[v]] for u, v in self.reduced.edges()],
            "embedding": self.embedding.to_json(),
        }


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def verify_embedding(g: Graph, emb: PlanarEmbedding) -> Verdict:
    """Rotation matches adjacency and every component satisfies V - E + F = 2."""
    if len(emb.rotation) != g.n:
        return Verdict(False, "rotation", f"rotation covers {len(emb.rotation)} vertices, graph has {g.n}")
    for v, rot in enumerate(emb.rotation):
        if len(set(rot)) != len(rot) or to_mask(rot) != g.adj[v]:
            return Verdict(False, "rotation", f"rotation at {v} is not a permutation of its neighbours")
    comp_of = {}
    comps = g.components()
    for ci, comp in enumerate(comps):
        for v in iter_bits(comp):
            comp_of[v] = ci
    face_count = [0] * len(comps)
    for f in emb.faces:
        face_count[comp_of[f[0][0]]] += 1
    for ci, comp in enumerate(comps):
        verts = popcount(comp)
        edges = sum(popcount(g.adj[v]) for v in iter_bits(comp)) // 2
        faces = face_count[ci] if edges else 1
        if verts - edges + faces != 2:
            return Verdict(False, "euler", f"component {ci}: V-E+F = {verts - edges + faces}")
    seen_comp = set()
    for dart in emb.outer:
        u, v = dart
        if not (0 <= u < g.n) or not g.has_edge(u, v):
            return Verdict(False, "outer", f"outer dart {dart} is not an edge")
        if comp_of[u] in seen_comp:
            return Verdict(False, "outer", f"two outer darts in component of {u}")
        seen_comp.add(comp_of[u])
    return PASS


def _cyclic_subsequence(walk: Sequence[int], seq: Sequence[int]) -> bool:
    if not seq:
        return True
    if not walk:
        return len(seq) == 1
    n = len(walk)
    for direction in (walk, list(reversed(walk))):
        for start in range(n):
            if direction[start] != seq[0]:
                continue
            k = 1
            for step in range(1, n):
                if k == len(seq):
                    break
                if direction[(start + step) % n] == seq[k]:
                    k += 1
            if k == len(seq):
                return True
    return False


def check_boundary(g: Graph, emb: PlanarEmbedding, boundary: Sequence[int]) -> Verdict:
    """Boundary vertices lie on the outer faces in the given cyclic order."""
    if not boundary:
        return PASS
    comps = g.components()
    comp_of = {v: ci for ci, c in enumerate(comps) for v in iter_bits(c)}
    outer_by_comp = {comp_of[d[0]]: d for d in emb.outer}
    groups: dict[int, list[int]] = {}
    for idx, b in enumerate(boundary):
        groups.setdefault(comp_of[b], []).append(idx)
    for ci, idxs in groups.items():
        seq = [boundary[i] for i in idxs]
        if len(seq) == 1 and g.adj[seq[0]] == 0:
            continue
        if ci not in outer_by_comp:
            return Verdict(False, "boundary", f"no outer face marked for the component of {seq[0]}")
        walk = [d[0] for d in emb.face(outer_by_comp[ci])]
        if not _cyclic_subsequence(walk, seq):
            return Verdict(False, "boundary", f"{seq} not in cyclic order on outer walk {walk}")
    # components meeting the boundary must not interleave around the disc
    ids = list(groups)
    for p, q in combinations(ids, 2):
        labels = [comp_of[b] for b in boundary if comp_of[b] in (p, q)]
        changes = sum(1 for i in range(len(labels)) if labels[i] != labels[i - 1])
        if changes > 2:
            return Verdict(False, "boundary", "boundary vertices of two components interleave")
    return PASS


def is_facial_triangle(emb: PlanarEmbedding, tri: Sequence[int]) -> bool:
    want = set(tri)
    return any(len(f) == 3 and {d[0] for d in f} == want for f in emb.faces)


def reduce_graph(g: Graph, groups: Sequence[Sequence[int]]) -> tuple[Graph, tuple[int, ...]]:
    """p(G, A): delete each group and make its neighbourhood a clique."""
    gone = 0
    extra = []
    for grp in groups:
        m = to_mask(grp)
        gone |= m
        extra.extend(combinations(sorted(iter_bits(g.neighborhood(m))), 2))
    h = g.with_edges(extra)
    red, kept = h.induced(g.full & ~gone)
    return red, tuple(kept)


def verify_three_planar(g: Graph, boundary: Sequence[int], st: ThreePlanarStructure) -> Verdict:
    if tuple(boundary) != st.boundary:
        return Verdict(False, "boundary", "structure records a different boundary sequence")
    if len(set(boundary)) != len(boundary):
        return Verdict(False, "boundary", "boundary vertices repeat")
    masks = [to_mask(a) for a in st.groups]
    bmask = to_mask(boundary)
    for i, m in enumerate(masks):
        if not m:
            return Verdict(False, "groups", f"group {i} is empty")
        if m & bmask:
            return Verdict(False, "groups", f"group {i} contains a boundary vertex")
    for i, j in combinations(range(len(masks)), 2):
        if masks[i] & masks[j]:
            return Verdict(False, "groups", f"groups {i} and {j} overlap")
        if g.neighborhood(masks[i]) & masks[j] or g.neighborhood(masks[j]) & masks[i]:
            return Verdict(False, "(a)", f"groups {i} and {j} are adjacent")
    nbhs = [g.neighborhood(m) for m in masks]
    for i, nb in enumerate(nbhs):
        if popcount(nb) > 3:
            return Verdict(False, "(b)", f"group {i} has {popcount(nb)} neighbours")
    red, kept = reduce_graph(g, st.groups)
    if kept != st.kept or red.adj != st.reduced.adj:
        return Verdict(False, "(c)", "reduced graph does not equal p(G, A)")
    v = verify_embedding(red, st.embedding)
    if not v:
        return v
    index = {o: i for i, o in enumerate(kept)}
    for i, nb in enumerate(nbhs):
        if popcount(nb) == 3:
            tri = [index[o] for o in iter_bits(nb)]
            if not is_facial_triangle(st.embedding, tri):
                return Verdict(False, "(c)", f"neighbourhood of group {i} is not a facial triangle")
    return check_boundary(red, st.embedding, [index[b] for b in boundary])


# ---------------------------------------------------------------------------
# planarity
# ---------------------------------------------------------------------------


def _nx_graph(n: int, edges) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(n))
    h.add_edges_from(edges)
    return h


def _first_faces(g: Graph, rotation: tuple[tuple[int, ...], ...]) -> tuple[Dart, ...]:
    emb = PlanarEmbedding(rotation)
    best: dict[int, tuple[int, Dart]] = {}
    comps = g.components()
    comp_of = {v: ci for ci, c in enumerate(comps) for v in iter_bits(c)}
    for f in emb.faces:
        ci = comp_of[f[0][0]]
        dart = min(f)
        key = (-len(f), dart)
        if ci not in best or key < best[ci][0]:
            best[ci] = (key, dart)
    return tuple(best[ci][1] for ci in sorted(best))


def kuratowski_from_edges(edges: Sequence[tuple[int, int]]) -> KuratowskiWitness:
    """Read branch vertices and paths off a homeomorph of K5 or K3,3."""
    nbrs: dict[int, list[int]] = {}
    for u, v in edges:
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    branch = sorted(v for v, ns in nbrs.items() if len(ns) >= 3)
    bset = set(branch)
    paths: dict[tuple[int, int], tuple[int, ...]] = {}
    for b in branch:
        for nxt in sorted(nbrs[b]):
            walk = [b, nxt]
            while walk[-1] not in bset:
                cur = walk[-1]
                step = [w for w in nbrs[cur] if w != walk[-2]]
                walk.append(step[0])
            key = pair_key(walk[0], walk[-1])
            if key not in paths:
                paths[key] = tuple(walk) if walk[0] < walk[-1] else tuple(reversed(walk))
    if len(branch) == 5:
        return KuratowskiWitness("TK5", tuple(branch), paths)
    first = branch[0]
    joined = {w for key in paths for w in key if first in key} - {first}
    left = [first] + [b for b in branch if b != first and b not in joined]
    right = sorted(joined)
    return KuratowskiWitness("TK33", tuple(left + right), paths)


def planarity(g: Graph) -> PlanarEmbedding | KuratowskiWitness:
    """Exactly one of a verified embedding or a verified Kuratowski subdivision."""
    ok, cert = nx.check_planarity(g.to_networkx(), counterexample=True)
    if ok:
        rotation = tuple(tuple(cert.neighbors_cw_order(v)) for v in range(g.n))
        emb = PlanarEmbedding(rotation, _first_faces(g, rotation))
        verdict = verify_embedding(g, emb)
        if not verdict:
            raise AssertionError(f"planarity backend produced a bad embedding: {verdict}")
        return emb
    wit = kuratowski_from_edges(list(cert.edges()))
    verdict = verify_subdivision(g, wit.branch, wit.paths, wit.pattern)
    if not verdict:
        raise AssertionError(f"planarity backend produced a bad Kuratowski subgraph: {verdict}")
    return wit


def is_planar(g: Graph) -> bool:
    return nx.check_planarity(g.to_networkx())[0]


def euler_charge_sum(emb: PlanarEmbedding) -> int:
    """Sum of (degree - 4) over vertices and (face size - 4) over faces."""
    n = len(emb.rotation)
    if n == 0:
        raise ValueError("empty embedding")
    g = Graph.from_edges(n, ((u, v) for u, rot in enumerate(emb.rotation) for v in rot if u < v))
    if not g.is_connected():
        raise ValueError("charge identity needs a connected embedding")
    total = sum(len(rot) - 4 for rot in emb.rotation)
    faces = emb.faces
    if not faces:
        return total + (0 - 4)
    return total + sum(len(f) - 4 for f in faces)


# ---------------------------------------------------------------------------
# disc embeddings with forced boundary order and facial triangles
# ---------------------------------------------------------------------------


def _move_block(rot: list[int], start: int, stop: int, anchor: int, before: bool) -> list[int]:
    """Cut the cyclic block strictly between ``start`` and ``stop`` and
    reinsert it next to ``anchor``."""
    n = len(rot)
    i = rot.index(start)
    block = []
    k = (i + 1) % n
    while rot[k] != stop:
        block.append(rot[k])
        k = (k + 1) % n
    if not block:
        return rot
    rest = [w for w in rot if w not in set(block)]
    j = rest.index(anchor)
    if before:
        return rest[:j] + block + rest[j:]
    return rest[: j + 1] + block + rest[j + 1 :]


def _clear_claw(rot: dict[int, list[int]], w: int) -> bool:
    """Empty the three faces around claw vertex ``w``; True if anything moved."""
    moved = False
    spokes = rot[w]
    for i in range(3):
        p, q = spokes[i], spokes[(i + 1) % 3]
        rq = rot[q]
        if rq[(rq.index(w) + 1) % len(rq)] != p:
            rot[q] = _move_block(rq, w, p, p, before=False)
            moved = True
        rp = rot[p]
        if rp[(rp.index(q) + 1) % len(rp)] != w:
            rot[p] = _move_block(rp, q, w, q, before=True)
            moved = True
    return moved


def _embed(h: Graph, boundary: Sequence[int], triangles: Sequence[tuple[int, ...]]) -> PlanarEmbedding | None:
    n0 = h.n
    edges = set(h.edges())
    extra_vertices = 0
    claws = []
    claw_edges = []
    for tri in sorted(set(tuple(sorted(t)) for t in triangles)):
        w = n0 + extra_vertices
        extra_vertices += 1
        claws.append(w)
        claw_edges.extend((t, w) for t in tri)
    k = len(boundary)
    rim_added = []
    if k >= 2:
        apex = n0 + extra_vertices
        extra_vertices += 1
        claw_edges.extend((b, apex) for b in boundary)
        if k >= 3:
            for i in range(k):
                e = pair_key(boundary[i], boundary[(i + 1) % k])
                if e not in edges:
                    rim_added.append(e)
    nxg = _nx_graph(n0 + extra_vertices, list(edges) + claw_edges + rim_added)
    ok, cert = nx.check_planarity(nxg)
    if not ok:
        return None
    rot = {v: list(cert.neighbors_cw_order(v)) for v in range(n0 + extra_vertices)}
    for _ in range(4 * len(claws) + 4):
        if not any([_clear_claw(rot, w) for w in claws]):
            break
    drop = set(range(n0, n0 + extra_vertices))
    gone = {(u, v) for u, v in rim_added} | {(v, u) for u, v in rim_added}
    rotation = tuple(
        tuple(w for w in rot[v] if w not in drop and (v, w) not in gone) for v in range(n0)
    )
    outer = _outer_for_boundary(h, rotation, boundary)
    if outer is None:
        return None
    emb = PlanarEmbedding(rotation, outer)
    if not verify_embedding(h, emb) or not check_boundary(h, emb, boundary):
        return None
    if any(not is_facial_triangle(emb, t) for t in triangles):
        return None
    return emb


def _outer_for_boundary(h: Graph, rotation, boundary: Sequence[int]) -> tuple[Dart, ...] | None:
    emb = PlanarEmbedding(rotation)
    comps = h.components()
    comp_of = {v: ci for ci, c in enumerate(comps) for v in iter_bits(c)}
    by_comp: dict[int, list[int]] = {}
    for b in boundary:
        by_comp.setdefault(comp_of[b], []).append(b)
    chosen: dict[int, Dart] = {}
    for f in emb.faces:
        ci = comp_of[f[0][0]]
        seq = by_comp.get(ci)
        if ci in chosen:
            continue
        if seq is None:
            chosen[ci] = min(f)
        elif _cyclic_subsequence([d[0] for d in f], seq):
            chosen[ci] = min(f)
    for ci, seq in by_comp.items():
        has_edges = any(h.adj[v] for v in iter_bits(comps[ci]))
        if has_edges and ci not in chosen:
            return None
    return tuple(chosen[ci] for ci in sorted(chosen))


def disc_planar(g: Graph, boundary: Sequence[int]) -> PlanarEmbedding | None:
    """Embedding with ``boundary`` on the outer face in cyclic order, if any."""
    _check_boundary_arg(g, boundary)
    return _embed(g, list(boundary), ())


def _check_boundary_arg(g: Graph, boundary: Sequence[int]) -> None:
    if len(set(boundary)) != len(boundary):
        raise ValueError(f"boundary vertices must be distinct: {list(boundary)}")
    for b in boundary:
        if not (0 <= b < g.n):
            raise ValueError(f"boundary vertex {b} not in graph")


def group_candidates(g: Graph, boundary_mask: int) -> list[tuple[int, int]]:
    """(group, neighbourhood) pairs: components of G - S with |S| <= 3 that
    avoid the boundary, largest first."""
    found: dict[int, int] = {}
    for size in range(4):
        for sep in combinations(range(g.n), size):
            smask = to_mask(sep)
            for comp in g.components(g.full & ~smask):
                if comp & boundary_mask or comp in found:
                    continue
                nb = g.neighborhood(comp)
                if popcount(nb) <= 3:
                    found[comp] = nb
    return sorted(found.items(), key=lambda t: (-popcount(t[0]), sorted(iter_bits(t[0]))))


def _compatible(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return not (a[0] & b[0]) and not (a[1] & b[0]) and not (b[1] & a[0])


def _try_family(g: Graph, boundary: Sequence[int], family: Sequence[tuple[int, int]]) -> ThreePlanarStructure | None:
    groups = tuple(tuple(iter_bits(c)) for c, _ in family)
    red, kept = reduce_graph(g, groups)
    index = {o: i for i, o in enumerate(kept)}
    tris = [tuple(index[o] for o in iter_bits(nb)) for _, nb in family if popcount(nb) == 3]
    emb = _embed(red, [index[b] for b in boundary], tris)
    if emb is None:
        return None
    return ThreePlanarStructure(tuple(boundary), groups, kept, red, emb)


def _dihedral_canonical(boundary: tuple[int, ...]) -> tuple[int, ...]:
    k = len(boundary)
    if k == 0:
        return boundary
    forms = []
    for seq in (boundary, boundary[::-1]):
        for i in range(k):
            forms.append(seq[i:] + seq[:i])
    return min(forms)


def three_planar(
    g: Graph, boundary: Sequence[int], *, budget: int = DEFAULT_FAMILY_BUDGET
) -> ThreePlanarStructure | None:
    """Search for a family of groups making (g, boundary) 3-planar.

    Tries the empty family, then a greedy family of maximal groups, then all
    compatible families.  Every returned structure passes
    :func:`verify_three_planar`.
    """
    _check_boundary_arg(g, boundary)
    if g.n > MAX_THREE_PLANAR_N:
        raise BudgetExceeded(f"3-planar search limited to {MAX_THREE_PLANAR_N} vertices, got {g.n}")
    boundary = tuple(boundary)
    st = _three_planar_cached(g, _dihedral_canonical(boundary), budget)
    if st is None:
        return None
    return ThreePlanarStructure(boundary, st.groups, st.kept, st.reduced, st.embedding)


@lru_cache(maxsize=4096)
def _three_planar_cached(g: Graph, boundary: tuple[int, ...], budget: int) -> ThreePlanarStructure | None:
    st = _try_family(g, boundary, ())
    if st is not None:
        return st
    cands = group_candidates(g, to_mask(boundary))
    if not cands:
        return None
    tried: set[frozenset[int]] = {frozenset()}

    greedy: list[tuple[int, int]] = []
    for c in cands:
        if all(_compatible(c, d) for d in greedy):
            greedy.append(c)
    key = frozenset(c for c, _ in greedy)
    tried.add(key)
    st = _try_family(g, boundary, greedy)
    if st is not None:
        return st

    spent = 0
    chosen: list[tuple[int, int]] = []

    def search(i: int) -> ThreePlanarStructure | None:
        nonlocal spent
        if i == len(cands):
            key = frozenset(c for c, _ in chosen)
            if key in tried:
                return None
            tried.add(key)
            spent += 1
            if spent > budget:
                raise BudgetExceeded(f"3-planar family search exceeded {budget} families", spent=spent)
            return _try_family(g, boundary, chosen)
        c = cands[i]
        if all(_compatible(c, d) for d in chosen):
            chosen.append(c)
            got = search(i + 1)
            chosen.pop()
            if got is not None:
                return got
        return search(i + 1)

    return search(0)
