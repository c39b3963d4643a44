"""Disjoint-path engines: linkage search, fans with anchored rerouting, the
two-paths-or-3-planar dichotomy, cycles through three vertices with their
2-cut obstructions, and forced middle paths between terminal triples."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

from .bits import iter_bits, popcount, to_mask
from .errors import HypothesisFailed, NotTwoConnected, ObstructionNotFound
from .flow import VertexFlow
from .graph import Graph, is_two_connected
from .planarity import ThreePlanarStructure, three_planar, verify_three_planar
from .subdivision import PASS, PathPacker, Verdict, pair_key

DISJOINT = "disjoint"
INDEPENDENT = "independent"
DEFAULT_PATH_BUDGET = 2_000_000


@dataclass(frozen=True)
class PathSystem:
    paths: tuple[tuple[int, ...], ...]
    mode: str = DISJOINT

    def to_json(self) -> dict:
        return {"mode": self.mode, "paths": [list(p) for p in self.paths]}


def verify_path_system(
    g: Graph, ps: PathSystem, pairs: Sequence[tuple[int, int]] | None = None
) -> Verdict:
    """Adjacency, simplicity, declared disjointness, and (optionally) endpoints."""
    if ps.mode not in (DISJOINT, INDEPENDENT):
        return Verdict(False, "mode", f"unknown mode {ps.mode!r}")
    if pairs is not None:
        if len(pairs) != len(ps.paths):
            return Verdict(False, "endpoints", f"{len(ps.paths)} paths for {len(pairs)} pairs")
        for (s, t), p in zip(pairs, ps.paths):
            if not p or p[0] != s or p[-1] != t:
                return Verdict(False, "endpoints", f"path {list(p)} does not run {s}->{t}")
    for p in ps.paths:
        if not p:
            return Verdict(False, "simple", "empty path")
        if len(set(p)) != len(p):
            return Verdict(False, "simple", f"path {list(p)} repeats a vertex")
        for a, b in zip(p, p[1:]):
            if not (0 <= a < g.n and 0 <= b < g.n) or not g.has_edge(a, b):
                return Verdict(False, "adjacency", f"path {list(p)} uses non-edge {a}-{b}")
    for i, j in combinations(range(len(ps.paths)), 2):
        p, q = ps.paths[i], ps.paths[j]
        if ps.mode == DISJOINT:
            shared = set(p) & set(q)
            if shared:
                return Verdict(False, "disjointness", f"paths {i} and {j} share {sorted(shared)}")
        else:
            if set(p) & set(q[1:-1]) or set(q) & set(p[1:-1]):
                return Verdict(False, "independence", f"paths {i} and {j} meet at an internal vertex")
    return PASS


def disjoint_paths(
    g: Graph,
    pairs: Sequence[tuple[int, int]],
    mode: str = DISJOINT,
    *,
    avail: int | None = None,
    budget: int | None = DEFAULT_PATH_BUDGET,
) -> PathSystem | None:
    """Paths linking each (source, target) pair, or None if none exist.

    ``disjoint``: paths share no vertex; a pair (s, s) is the one-vertex path.
    ``independent``: no path meets another's interior; ends may be shared.
    Interior vertices are drawn from ``avail`` (default: all non-terminals).
    """
    if len(pairs) > 5:
        raise ValueError("at most five pairs")
    if mode not in (DISJOINT, INDEPENDENT):
        raise ValueError(f"unknown mode {mode!r}")
    terminals = to_mask(v for pr in pairs for v in pr)
    interior = (g.full if avail is None else avail) & ~terminals
    if mode == DISJOINT:
        seen: set[int] = set()
        for s, t in pairs:
            ends = {s, t}
            if ends & seen:
                return None
            seen |= ends
    else:
        keys = [pair_key(s, t) for s, t in pairs]
        if any(s == t for s, t in pairs):
            raise ValueError("independent mode needs distinct ends per pair")
        if len(set(keys)) != len(keys):
            raise ValueError("independent mode does not support repeated pairs")

    real = [(s, t) for s, t in pairs if s != t]
    sources = {s for s, _ in real}
    if len(sources) == 1 and (mode == INDEPENDENT or len(real) == 1):
        got = _fan_paths(g, real[0][0], [t for _, t in real], interior)
        if got is None:
            return None
        by_target = {p[-1]: p for p in got}
    else:
        packer = PathPacker(g, budget)
        found = packer.pack(real, interior)
        if found is None:
            return None
        by_target = None
    out = []
    for s, t in pairs:
        if s == t:
            out.append((s,))
        elif by_target is not None:
            out.append(by_target[t])
        else:
            p = found[pair_key(s, t)]
            out.append(p if p[0] == s else p[::-1])
    ps = PathSystem(tuple(out), mode)
    assert verify_path_system(g, ps, pairs), "path search produced an invalid system"
    return ps


def _fan_paths(g: Graph, u: int, targets: Sequence[int], interior: int) -> list[tuple[int, ...]] | None:
    net = VertexFlow(g.adj, u, to_mask(targets), allowed=interior)
    if net.run(len(targets)) < len(targets):
        return None
    return [tuple(p) for p in net.paths()]


# ---------------------------------------------------------------------------
# two disjoint paths or a 3-planar obstruction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoDPOutcome:
    paths: PathSystem | None = None
    obstruction: ThreePlanarStructure | None = None


def verify_two_dp(g: Graph, terminals: Sequence[int], out: TwoDPOutcome) -> Verdict:
    s1, s2, t1, t2 = terminals
    if (out.paths is None) == (out.obstruction is None):
        return Verdict(False, "variant", "exactly one of paths and obstruction must be present")
    if out.paths is not None:
        if out.paths.mode != DISJOINT:
            return Verdict(False, "mode", "paths must be fully disjoint")
        return verify_path_system(g, out.paths, [(s1, t1), (s2, t2)])
    return verify_three_planar(g, (s1, s2, t1, t2), out.obstruction)


def two_dp_or_three_planar(g: Graph, s1: int, s2: int, t1: int, t2: int, *, budget: int | None = DEFAULT_PATH_BUDGET) -> TwoDPOutcome:
    if len({s1, s2, t1, t2}) != 4:
        raise ValueError("terminals must be four distinct vertices")
    ps = disjoint_paths(g, [(s1, t1), (s2, t2)], DISJOINT, budget=budget)
    if ps is not None:
        return TwoDPOutcome(paths=ps)
    st = three_planar(g, (s1, s2, t1, t2))
    if st is None:
        raise ObstructionNotFound(f"no disjoint paths and no 3-planar structure for {(s1, s2, t1, t2)}")
    return TwoDPOutcome(obstruction=st)


# ---------------------------------------------------------------------------
# fans
# ---------------------------------------------------------------------------


def fan(g: Graph, u: int, targets: Iterable[int], n: int) -> PathSystem | None:
    """n independent paths from u to distinct targets, internally avoiding targets."""
    tmask = to_mask(targets)
    if (tmask >> u) & 1:
        raise ValueError("u must not be a target")
    if n > popcount(tmask):
        raise ValueError("n exceeds the number of targets")
    net = VertexFlow(g.adj, u, tmask, allowed=g.full & ~tmask)
    if net.run(n) < n:
        return None
    paths = sorted((tuple(p) for p in net.paths()), key=lambda p: p[-1])
    return PathSystem(tuple(paths), INDEPENDENT)


def perfect_reroute(
    g: Graph, u: int, targets: Iterable[int], anchors: Sequence[int], n: int
) -> PathSystem:
    """An n-fan from u into ``targets`` whose first k paths end at the anchors.

    The anchored fan is pushed into the flow network first; augmenting paths
    never leave the sink, so the anchor arcs stay saturated while the flow
    grows to n.
    """
    targets = list(targets)
    tmask = to_mask(targets)
    k = len(anchors)
    if len(set(anchors)) != k or any(not (tmask >> a) & 1 for a in anchors):
        raise ValueError("anchors must be distinct targets")
    if n < k:
        raise ValueError("n must be at least the number of anchors")
    interior = g.full & ~tmask
    anchored = VertexFlow(g.adj, u, to_mask(anchors), allowed=interior)
    if anchored.run(k) < k:
        raise HypothesisFailed("no independent fan from u onto the anchors", which="anchored_fan")
    if fan(g, u, targets, n) is None:
        raise HypothesisFailed(f"no independent {n}-fan from u into the targets", which="fan")
    seed = anchored.paths()

    net = VertexFlow(g.adj, u, tmask, allowed=interior)
    for path in seed:
        nodes = [2 * u + 1]
        for v in path[1:-1]:
            nodes += [2 * v, 2 * v + 1]
        nodes += [2 * path[-1], net.sink]
        for a, b in zip(nodes, nodes[1:]):
            net.cap[(a, b)] -= 1
            net.cap[(b, a)] += 1
    value = k + net.run(n - k)
    assert value == n
    by_end = {p[-1]: tuple(p) for p in net.paths()}
    ordered = [by_end.pop(a) for a in anchors]
    ordered += [by_end[t] for t in sorted(by_end)]
    ps = PathSystem(tuple(ordered), INDEPENDENT)
    assert verify_path_system(g, ps)
    return ps


# ---------------------------------------------------------------------------
# cycles through three vertices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CycleObstruction:
    kind: str  # "i", "ii" or "iii"
    cuts: tuple[tuple[int, ...], ...]
    pieces: tuple[tuple[int, ...], ...]
    hub: int | None = None
    bridges: tuple[tuple[int, ...], ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "cuts": [list(c) for c in self.cuts],
            "pieces": [list(p) for p in self.pieces],
            "hub": self.hub,
            "bridges": [list(b) for b in self.bridges],
        }


def verify_cycle(g: Graph, cycle: Sequence[int], ys: Sequence[int]) -> Verdict:
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        return Verdict(False, "cycle", "not a simple cycle")
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        if not g.has_edge(a, b):
            return Verdict(False, "adjacency", f"non-edge {a}-{b}")
    if not set(ys) <= set(cycle):
        return Verdict(False, "cover", "cycle misses a prescribed vertex")
    return PASS


def _is_union_of_components(g: Graph, cut: int, piece: int) -> bool:
    comps = g.components(g.full & ~cut)
    return all(c & piece == 0 or c & ~piece == 0 for c in comps) and piece & cut == 0


def verify_cycle_obstruction(g: Graph, ys: Sequence[int], obs: CycleObstruction) -> Verdict:
    """Re-check the structural conditions of the declared kind from scratch."""
    cuts = [to_mask(c) for c in obs.cuts]
    pieces = [to_mask(p) for p in obs.pieces]
    if len(pieces) != 3:
        return Verdict(False, "pieces", "need three pieces")
    for c in cuts:
        if popcount(c) != 2 or len(g.components(g.full & ~c)) < 2:
            return Verdict(False, "cuts", f"{sorted(iter_bits(c))} is not a 2-cut")
    for i, j in combinations(range(3), 2):
        if pieces[i] & pieces[j]:
            return Verdict(False, "pieces", f"pieces {i} and {j} overlap")
    for i in range(3):
        if not (pieces[i] >> ys[i]) & 1:
            return Verdict(False, "pieces", f"piece {i} misses y{i + 1}")
    if obs.kind == "i":
        if len(cuts) != 1:
            return Verdict(False, "cuts", "kind i uses one cut")
        for p in pieces:
            if not _is_union_of_components(g, cuts[0], p):
                return Verdict(False, "pieces", "piece is not a union of components of G - S")
        return PASS
    if len(cuts) != 3:
        return Verdict(False, "cuts", f"kind {obs.kind} uses three cuts")
    for c, p in zip(cuts, pieces):
        if not _is_union_of_components(g, c, p):
            return Verdict(False, "pieces", "piece is not a union of components of G - S_y")
    if obs.kind == "ii":
        z = obs.hub
        if z is None or not all((c >> z) & 1 for c in cuts):
            return Verdict(False, "hub", "hub missing from some cut")
        rest = [c & ~(1 << z) for c in cuts]
        if any(rest[i] & rest[j] for i, j in combinations(range(3), 2)):
            return Verdict(False, "cuts", "cuts minus the hub are not pairwise disjoint")
        return PASS
    if obs.kind == "iii":
        if any(cuts[i] & cuts[j] for i, j in combinations(range(3), 2)):
            return Verdict(False, "cuts", "cuts are not pairwise disjoint")
        left = g.full & ~(pieces[0] | pieces[1] | pieces[2])
        comps = g.components(left)
        if len(comps) != 2:
            return Verdict(False, "bridges", f"remainder has {len(comps)} components")
        for comp in comps:
            if any(popcount(comp & c) != 1 for c in cuts):
                return Verdict(False, "bridges", "a remainder component does not hold one vertex of each cut")
        return PASS
    return Verdict(False, "kind", f"unknown kind {obs.kind!r}")


def _component_of(g: Graph, cut: int, v: int) -> int:
    for c in g.components(g.full & ~cut):
        if (c >> v) & 1:
            return c
    return 0


def find_cycle_obstruction(g: Graph, ys: Sequence[int]) -> CycleObstruction | None:
    """First matching template among kinds i, ii, iii over all 2-cuts."""
    cut_list = [to_mask(pr) for pr in combinations(range(g.n), 2)]
    cut_list = [c for c in cut_list if len(g.components(g.full & ~c)) >= 2]
    ymask = to_mask(ys)

    for c in cut_list:
        if c & ymask:
            continue
        comps = [_component_of(g, c, y) for y in ys]
        if len({comps[0], comps[1], comps[2]}) == 3:
            return _obstruction("i", [c], comps, g)

    # per y: cuts avoiding y with y's component free of the other y's
    options: list[list[tuple[int, int]]] = []
    for i, y in enumerate(ys):
        others = ymask & ~(1 << y)
        opts = []
        for c in cut_list:
            if (c >> y) & 1:
                continue
            comp = _component_of(g, c, y)
            if not comp & others:
                opts.append((c, comp))
        options.append(opts)

    for z in range(g.n):
        zb = 1 << z
        with_z = [[(c, d) for c, d in opts if c & zb] for opts in options]
        for (c1, d1), (c2, d2), (c3, d3) in product(*with_z):
            r1, r2, r3 = c1 & ~zb, c2 & ~zb, c3 & ~zb
            if r1 & r2 or r1 & r3 or r2 & r3:
                continue
            if d1 & d2 or d1 & d3 or d2 & d3:
                continue
            return _obstruction("ii", [c1, c2, c3], [d1, d2, d3], g, hub=z)

    for (c1, _), (c2, _), (c3, _) in product(*options):
        if c1 & c2 or c1 & c3 or c2 & c3:
            continue
        cuts = [c1, c2, c3]
        pieces = []
        for i, c in enumerate(cuts):
            others = ymask & ~(1 << ys[i])
            piece = 0
            for comp in g.components(g.full & ~c):
                if not comp & others:
                    piece |= comp
            pieces.append(piece)
        if pieces[0] & pieces[1] or pieces[0] & pieces[2] or pieces[1] & pieces[2]:
            continue
        left = g.full & ~(pieces[0] | pieces[1] | pieces[2])
        comps = g.components(left)
        if len(comps) != 2:
            continue
        if all(popcount(comp & c) == 1 for comp in comps for c in cuts):
            obs = _obstruction("iii", cuts, pieces, g, bridges=comps)
            return obs
    return None


def _obstruction(kind, cuts, pieces, g, hub=None, bridges=()) -> CycleObstruction:
    tup = lambda m: tuple(iter_bits(m))  # noqa: E731
    return CycleObstruction(
        kind,
        tuple(tup(c) for c in cuts),
        tuple(tup(p) for p in pieces),
        hub,
        tuple(tup(b) for b in bridges),
    )


def cycle_through_three(
    g: Graph, y1: int, y2: int, y3: int, *, budget: int | None = DEFAULT_PATH_BUDGET
) -> tuple[int, ...] | CycleObstruction:
    """A cycle through y1, y2, y3, or the 2-cut obstruction that forbids one."""
    ys = (y1, y2, y3)
    if len(set(ys)) != 3:
        raise ValueError("y1, y2, y3 must be distinct")
    if not is_two_connected(g):
        raise NotTwoConnected("graph is not 2-connected")
    ps = disjoint_paths(g, [(y1, y2), (y2, y3), (y3, y1)], INDEPENDENT, budget=budget)
    if ps is not None:
        cycle = ps.paths[0][:-1] + ps.paths[1][:-1] + ps.paths[2][:-1]
        assert verify_cycle(g, cycle, ys)
        return cycle
    obs = find_cycle_obstruction(g, ys)
    if obs is None:
        raise ObstructionNotFound(f"no cycle through {ys} and no 2-cut obstruction")
    assert verify_cycle_obstruction(g, ys, obs)
    return obs


# ---------------------------------------------------------------------------
# forced middle path between triples
# ---------------------------------------------------------------------------

NO_TRIPLE = "NoTriple"
FREE = "Free"
FORCED = "Forced"


@dataclass(frozen=True)
class TripleOutcome:
    kind: str
    paths: PathSystem | None = None


def forced_middle_triple(
    g: Graph,
    frm: tuple[int, int, int],
    to: tuple[int, int, int],
    *,
    budget: int | None = DEFAULT_PATH_BUDGET,
) -> TripleOutcome:
    """Do all systems of three disjoint frm-to-to paths join b to b'?

    Every bijection frm -> to is tried; Free carries a system avoiding the
    b-b' pairing, Forced carries one using it.
    """
    if len(set(frm)) != 3 or len(set(to)) != 3:
        raise ValueError("triples must consist of distinct vertices")
    if set(frm) == set(to):
        raise ValueError("the two triples must differ")
    b, b2 = frm[1], to[1]
    forced_witness = None
    for perm in permutations(to):
        pairs = list(zip(frm, perm))
        ps = disjoint_paths(g, pairs, DISJOINT, budget=budget)
        if ps is None:
            continue
        if perm[1] != b2:
            return TripleOutcome(FREE, ps)
        if forced_witness is None:
            forced_witness = ps
    if forced_witness is None:
        return TripleOutcome(NO_TRIPLE)
    return TripleOutcome(FORCED, forced_witness)
