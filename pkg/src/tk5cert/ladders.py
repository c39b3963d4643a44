"""Rungs, ladders and reduced sequences.

A rung is a graph with two terminal triples that no separation of order at
most 3 splits apart, and which matches one of seven structural types.
Ladders glue rungs along shared triples and force the middle terminal's path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Sequence, TypeVar

from .bits import iter_bits, popcount, to_mask
from .errors import IncompatibleGluing, NotARung, PreconditionFailed
from .graph import Graph, Separation
from .paths import DISJOINT, disjoint_paths
from .planarity import three_planar
from .subdivision import PASS, Verdict, pair_key

T = TypeVar("T")

Triple = tuple[int, int, int]


def reduced_sequence(w: Sequence[T]) -> list[T] | str:
    """Collapse runs of equal consecutive elements; strings stay strings."""
    out: list[T] = []
    for item in w:
        if not out or out[-1] != item:
            out.append(item)
    return "".join(out) if isinstance(w, str) else out


@dataclass(frozen=True)
class RungInstance:
    graph: Graph
    from_triple: Triple
    to_triple: Triple
    rung_type: str | None = None


# ---------------------------------------------------------------------------
# the order-3 separation precondition
# ---------------------------------------------------------------------------


def splitting_separation(g: Graph, frm: Sequence[int], to: Sequence[int]) -> Separation | None:
    """First separation of order <= 3 with frm on side 1 and to on side 2."""
    fmask, tmask = to_mask(frm), to_mask(to)
    for size in range(4):
        for sep in combinations(range(g.n), size):
            smask = to_mask(sep)
            side1 = side2 = smask
            free = []
            ok = True
            for comp in g.components(g.full & ~smask):
                has_f, has_t = bool(comp & fmask), bool(comp & tmask)
                if has_f and has_t:
                    ok = False
                    break
                if has_f:
                    side1 |= comp
                elif has_t:
                    side2 |= comp
                else:
                    free.append(comp)
            if not ok:
                continue
            if (fmask & ~side1) or (tmask & ~side2):
                continue
            inner_edges = sum(popcount(g.adj[v] & smask) for v in sep) // 2
            spare = len(free) + inner_edges
            need1, need2 = side1 == smask, side2 == smask
            if need1 + need2 > spare:
                continue
            # hand out spare items: a free component to each needy side first
            extra = list(free)
            if need1 and extra:
                side1 |= extra.pop()
            if need2 and extra:
                side2 |= extra.pop()
            for comp in extra:
                side2 |= comp
            sepn = Separation(tuple(iter_bits(side1)), tuple(iter_bits(side2)))
            return sepn
    return None


def is_rung_shaped(g: Graph, frm: Sequence[int], to: Sequence[int]) -> bool:
    return set(frm) != set(to) and splitting_separation(g, frm, to) is None


# ---------------------------------------------------------------------------
# rung types
# ---------------------------------------------------------------------------


def _tp(g: Graph, boundary: Sequence[int], keep: int | None = None, drop_edges: Sequence[tuple[int, int]] = ()) -> bool:
    """3-planarity of (g[keep] minus drop_edges, boundary); repeated boundary
    vertices make the instance ill-formed and count as failure."""
    if len(set(boundary)) != len(boundary):
        return False
    h = g.without_edges([e for e in drop_edges if g.has_edge(*e)]) if drop_edges else g
    if keep is None or keep == g.full:
        return three_planar(h, boundary) is not None
    sub, kept = h.induced(keep)
    index = {o: i for i, o in enumerate(kept)}
    return three_planar(sub, [index[b] for b in boundary]) is not None


def _side(g: Graph, sep: int, must: Sequence[int], avoid: Sequence[int]) -> int | None:
    """sep plus the components of g - sep meeting ``must``; None if such a
    component also meets ``avoid``."""
    mmask, amask = to_mask(must) & ~sep, to_mask(avoid) & ~sep
    side = sep
    for comp in g.components(g.full & ~sep):
        if comp & mmask:
            if comp & amask:
                return None
            side |= comp
    if to_mask(avoid) & side & ~sep:
        return None
    return side


def _type1(g, a, b, c, a2, b2, c2) -> bool:
    return b == b2 or {a, c} == {a2, c2}


def _type2(g, a, b, c, a2, b2, c2) -> bool:
    if a == a2 and _tp(g, (c, c2, b2, b), keep=g.full & ~(1 << a)):
        return True
    return c == c2 and _tp(g, (a, a2, b2, b), keep=g.full & ~(1 << c))


def _type3(g, a, b, c, a2, b2, c2) -> bool:
    return _tp(g, (a2, b2, c2, c, b, a))


def _type4(g, a, b, c, a2, b2, c2) -> bool:
    for mine, other in (((a, a2), (c, c2)), ((c, c2), (a, a2))):
        for v in range(g.n):
            side = _side(g, 1 << v, (*mine, b, b2), other)
            if side is None:
                continue
            if _tp(g, (mine[0], mine[1], b2, b), keep=side):
                return True
    return False


def type5_match(g, a, b, c, a2, b2, c2) -> str | None:
    """Which variant of type (5) holds: '(i)'/'(ii)' with hinge b or b'."""
    for label, mine, other in (("(i)", (a, a2), (c, c2)), ("(ii)", (c, c2), (a, a2))):
        if not _tp(g, (mine[0], mine[1], b2, b)):
            continue
        for hinge in (b, b2):
            for z in range(g.n):
                if z == hinge:
                    continue
                sep = (1 << z) | (1 << hinge)
                g2 = _side(g, sep, other, (*mine, b, b2))
                if g2 is None:
                    continue
                bnd = (other[0], other[1], z, b) if hinge == b else (other[0], other[1], b2, z)
                if _tp(g, bnd, keep=g2, drop_edges=[(z, hinge)]):
                    return f"{label} hinge {'b' if hinge == b else 'b′'}"
    return None


def _type5(g, a, b, c, a2, b2, c2) -> bool:
    return type5_match(g, a, b, c, a2, b2, c2) is not None


def _type6(g, a, b, c, a2, b2, c2) -> bool:
    variants = (
        ((a, a2, b2), (c, c2, b), lambda u, w: (a, a2, b2, w, u), lambda p, q: (c2, c, b, p, q)),
        ((a, a2, b), (c, c2, b2), lambda u, w: (b, a, a2, w, u), lambda p, q: (b2, c2, c, p, q)),
    )
    for in_a, in_c, bnd_a, bnd_c in variants:
        sides_a = {}
        for u, w in combinations(range(g.n), 2):
            s = _side(g, (1 << u) | (1 << w), in_a, in_c)
            if s is not None and not (to_mask(in_c) & s):
                sides_a[(u, w)] = s
        sides_c = {}
        for p, q in combinations(range(g.n), 2):
            s = _side(g, (1 << p) | (1 << q), in_c, in_a)
            if s is not None and not (to_mask(in_a) & s):
                sides_c[(p, q)] = s
        for (u, w), sa in sides_a.items():
            for (p, q), sc in sides_c.items():
                if sa & sc:
                    continue
                ok_a = any(
                    _tp(g, bnd_a(x, y), keep=sa, drop_edges=[(u, w)]) for x, y in ((u, w), (w, u))
                )
                if not ok_a:
                    continue
                if any(_tp(g, bnd_c(x, y), keep=sc, drop_edges=[(p, q)]) for x, y in ((p, q), (q, p))):
                    return True
    return False


def _type7(g, a, b, c, a2, b2, c2) -> bool:
    hinge = (1 << b) | (1 << b2)
    for w in range(g.n):
        if (hinge >> w) & 1:
            continue
        sa = _side(g, hinge | (1 << w), (a, a2), (c, c2))
        if sa is None:
            continue
        for p in range(g.n):
            if (hinge >> p) & 1 or p == w or (sa >> p) & 1:
                continue
            sc = _side(g, hinge | (1 << p), (c, c2), (a, a2))
            if sc is None or (sc & sa) != hinge:
                continue
            drop_a = [pair_key(x, y) for x, y in combinations((b, b2, w), 2)]
            drop_c = [pair_key(x, y) for x, y in combinations((b, b2, p), 2)]
            if _tp(g, (a, a2, b2, w, b), keep=sa, drop_edges=drop_a) and _tp(
                g, (c2, c, b, p, b2), keep=sc, drop_edges=drop_c
            ):
                return True
    return False


_DISJOINT_ONLY = {"3", "4", "5", "6", "7"}
RUNG_TYPES = (
    ("1", _type1),
    ("2", _type2),
    ("3", _type3),
    ("4", _type4),
    ("5", _type5),
    ("6", _type6),
    ("7", _type7),
)


def classify_rung(r: RungInstance) -> str | None:
    """Least-numbered rung type whose conditions hold, or None."""
    g, frm, to = r.graph, r.from_triple, r.to_triple
    if len(set(frm)) != 3 or len(set(to)) != 3:
        raise ValueError("triples must consist of distinct vertices")
    sep = splitting_separation(g, frm, to) if set(frm) != set(to) else None
    if set(frm) == set(to) or sep is not None:
        raise PreconditionFailed(f"terminal triples are split by a separation of order <= 3: {sep}")
    disjoint = not (set(frm) & set(to))
    for tag, check in RUNG_TYPES:
        if tag in _DISJOINT_ONLY and not disjoint:
            continue
        if check(g, *frm, *to):
            return tag
    return None


def classify_simple_rung(r: RungInstance, ambient_5conn: bool = True) -> str | None:
    """Match r against the four exact small shapes i-iv.

    ``ambient_5conn`` records that r sits in a 5-connected host, where these
    shapes are the only rungs left once TK5 and K4- are excluded; the match
    itself is purely structural and does not depend on it.
    """
    g, frm, to = r.graph, r.from_triple, r.to_triple
    try:
        tag = classify_rung(r)
    except PreconditionFailed as exc:
        raise NotARung(str(exc)) from exc
    if tag is None:
        raise NotARung("no rung type matches")
    a, b, c = frm
    a2, b2, c2 = to
    edges = {pair_key(u, v) for u, v in g.edges()}
    verts = set(range(g.n))
    terms = set(frm) | set(to)
    if b == b2:
        return "i"
    if {a, c} == {a2, c2} and verts == {a, c, b, b2} and edges == {pair_key(b, b2)}:
        return "ii"
    extra = verts - terms
    if len(extra) == 1:
        (v,) = extra
        if set(g.neighbors(v)) == terms:
            rest = {e for e in edges if v not in e}
            if a == a2 and rest == {pair_key(b, b2), pair_key(c, c2)}:
                return "iii"
            if c == c2 and rest == {pair_key(b, b2), pair_key(a, a2)}:
                return "iii"
            if not (set(frm) & set(to)) and rest == {pair_key(a, a2), pair_key(b, b2), pair_key(c, c2)}:
                return "iv"
    return None


# ---------------------------------------------------------------------------
# ladders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LadderRung:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    template: str | None = None


@dataclass(frozen=True)
class Ladder:
    graph: Graph
    rungs: tuple[LadderRung, ...]
    # triples[i] = (x_i, v_i, y_i), i = 0..m
    triples: tuple[Triple, ...]

    @property
    def spine(self) -> tuple[int, ...]:
        return tuple(t[1] for t in self.triples)

    def rung_instance(self, i: int) -> RungInstance:
        """Rung i (1-based) as a standalone graph on its own vertices."""
        r = self.rungs[i - 1]
        index = {v: k for k, v in enumerate(r.vertices)}
        h = Graph.from_edges(len(r.vertices), ((index[u], index[v]) for u, v in r.edges))
        frm = tuple(index[v] for v in self.triples[i - 1])
        to = tuple(index[v] for v in self.triples[i])
        return RungInstance(h, frm, to, r.template)

    def to_json(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges()],
            "rungs": [
                {"vertices": list(r.vertices), "edges": [list(e) for e in r.edges], "template": r.template}
                for r in self.rungs
            ],
            "triples": [list(t) for t in self.triples],
        }

    @classmethod
    def from_json(cls, data: dict) -> Ladder:
        g = Graph.from_edges(data["n"], (tuple(e) for e in data["edges"]))
        rungs = tuple(
            LadderRung(tuple(r["vertices"]), tuple(tuple(e) for e in r["edges"]), r.get("template"))
            for r in data["rungs"]
        )
        return cls(g, rungs, tuple(tuple(t) for t in data["triples"]))


def verify_ladder(l: Ladder) -> Verdict:
    """All four ladder conditions; failures name the condition and index."""
    m = len(l.rungs)
    if m == 0 or len(l.triples) != m + 1:
        return Verdict(False, "shape", "need m >= 1 rungs and m + 1 triples")
    g = l.graph
    for i, r in enumerate(l.rungs, start=1):
        vs = set(r.vertices)
        for u, v in r.edges:
            if u not in vs or v not in vs or not g.has_edge(u, v):
                return Verdict(False, "(i)", f"rung {i} has an edge outside the ladder or its vertex set")
        if not set(l.triples[i - 1]) <= vs or not set(l.triples[i]) <= vs:
            return Verdict(False, "(i)", f"rung {i} misses a terminal")
        inst = l.rung_instance(i)
        try:
            tag = classify_rung(inst)
        except (PreconditionFailed, ValueError) as exc:
            return Verdict(False, "(i)", f"rung {i}: {exc}")
        if tag is None:
            return Verdict(False, "(i)", f"rung {i} matches no rung type")
    for i, j in combinations(range(1, m + 1), 2):
        got = set(l.rungs[i - 1].vertices) & set(l.rungs[j - 1].vertices)
        want = set(l.triples[i]) & set(l.triples[j - 1])
        if got != want:
            return Verdict(False, "(ii)", f"rungs {i} and {j} share {sorted(got)}, expected {sorted(want)}")
    for coord in range(3):
        seq = [l.triples[k][coord] for k in range(1, m + 1)]
        for i, j in combinations(range(len(seq)), 2):
            if seq[i] == seq[j] and any(seq[k] != seq[i] for k in range(i, j + 1)):
                return Verdict(False, "(iii)", f"coordinate {coord} repeats non-contiguously at {i + 1}, {j + 1}")
    rung_edges: set[tuple[int, int]] = set()
    for i, r in enumerate(l.rungs, start=1):
        mine = {pair_key(u, v) for u, v in r.edges}
        if mine & rung_edges:
            return Verdict(False, "(iv)", f"rung {i} shares an edge with an earlier rung")
        rung_edges |= mine
    triple_sets = [set(t) for t in l.triples]
    for e in g.edges():
        if e not in rung_edges and not any(set(e) <= t for t in triple_sets):
            return Verdict(False, "(iv)", f"edge {e} is in no rung and inside no triple")
    covered = set().union(*(set(r.vertices) for r in l.rungs))
    if covered != set(range(g.n)):
        return Verdict(False, "(iv)", "ladder has vertices outside every rung")
    return PASS


TEMPLATES = ("i", "ii", "iii", "iv")


def build_ladder(spec: Sequence[str]) -> Ladder:
    """Chain rung templates into a ladder with fresh vertices.

    i: b = b'; a, c are twins joined to both a', c'.
    ii: a = a', c = c'; the single edge bb'.
    iii: a = a'; a hub v on all five terminals plus bb', cc'.
    iv: disjoint triples; a hub v on all six terminals plus aa', bb', cc'.
    """
    if not spec:
        raise IncompatibleGluing("a ladder needs at least one rung")
    for t in spec:
        if t not in TEMPLATES:
            raise IncompatibleGluing(f"unknown rung template {t!r}")
    count = 3
    edges: list[tuple[int, int]] = []
    rungs: list[LadderRung] = []
    triples: list[Triple] = [(0, 1, 2)]

    def fresh() -> int:
        nonlocal count
        count += 1
        return count - 1

    for t in spec:
        a, b, c = triples[-1]
        if t == "i":
            a2, c2 = fresh(), fresh()
            new = [(a, a2), (a, c2), (c, a2), (c, c2)]
            nxt = (a2, b, c2)
            verts = (a, b, c, a2, c2)
        elif t == "ii":
            b2 = fresh()
            new = [(b, b2)]
            nxt = (a, b2, c)
            verts = (a, b, c, b2)
        elif t == "iii":
            b2, c2, v = fresh(), fresh(), fresh()
            new = [(v, x) for x in (a, b, c, b2, c2)] + [(b, b2), (c, c2)]
            nxt = (a, b2, c2)
            verts = (a, b, c, b2, c2, v)
        else:
            a2, b2, c2, v = fresh(), fresh(), fresh(), fresh()
            new = [(v, x) for x in (a, b, c, a2, b2, c2)] + [(a, a2), (b, b2), (c, c2)]
            nxt = (a2, b2, c2)
            verts = (a, b, c, a2, b2, c2, v)
        edges += new
        rungs.append(LadderRung(tuple(sorted(verts)), tuple(pair_key(u, v) for u, v in new), t))
        triples.append(nxt)
    g = Graph.from_edges(count, edges)
    ladder = Ladder(g, tuple(rungs), tuple(triples))
    verdict = verify_ladder(ladder)
    if not verdict:
        raise IncompatibleGluing(f"templates {list(spec)} do not glue into a ladder: {verdict}")
    return ladder


def end_to_end_paths(l: Ladder):
    """Three disjoint paths from the first triple to the last, matched in order."""
    return disjoint_paths(l.graph, list(zip(l.triples[0], l.triples[-1])), DISJOINT)
