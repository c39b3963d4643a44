"""Quadruples (T, S_T, A, B) at a vertex x: a seed edge or triangle at x inside
a 5- or 6-cut, with the rest split into two nonempty sides."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .bits import iter_bits, popcount, to_mask
from .errors import HypothesisFailed, NotFiveConnected, NotFound
from .graph import Graph, contract, enumerate_cuts, find_k4_minus, is_k_connected, vertex_connectivity
from .subdivision import PASS, Verdict


# contracting a triangle must leave the 7 vertices Convention C asks for
MIN_RECIPE_N = 9


@dataclass(frozen=True)
class Quadruple:
    t: tuple[int, ...]
    s_t: tuple[int, ...]
    a_side: tuple[int, ...]
    b_side: tuple[int, ...]
    anchor: int

    @property
    def seed_kind(self) -> str:
        return "K3" if len(self.t) == 3 else "K2"

    def sort_key(self) -> tuple:
        return (len(self.a_side), len(self.s_t), self.s_t, self.a_side)


def seeds_at(g: Graph, x: int) -> list[tuple[int, ...]]:
    """Edges then triangles containing x, each as a sorted tuple."""
    edges = [tuple(sorted((x, a))) for a in g.neighbors(x)]
    tris = []
    for a, b in combinations(g.neighbors(x), 2):
        if g.has_edge(a, b):
            tris.append(tuple(sorted((x, a, b))))
    return sorted(edges) + sorted(tris)


def verify_quadruple(g: Graph, q: Quadruple) -> Verdict:
    """Conditions (1)-(4), recomputed from the graph."""
    t = set(q.t)
    if q.anchor not in t:
        return Verdict(False, "(1)", "anchor is not in T")
    if len(t) not in (2, 3) or len(t) != len(q.t) or any(not g.has_edge(u, v) for u, v in combinations(q.t, 2)):
        return Verdict(False, "(1)", "T does not induce K2 or K3")
    s = to_mask(q.s_t)
    if not t <= set(q.s_t):
        return Verdict(False, "(2)", "T is not inside S_T")
    comps = g.components(g.full & ~s)
    if len(comps) < 2:
        return Verdict(False, "(2)", "S_T is not a cut")
    a, b = to_mask(q.a_side), to_mask(q.b_side)
    if not a or not b:
        return Verdict(False, "(2)", "a side is empty")
    if a & b or (a | b | s) != g.full or (a | b) & s:
        return Verdict(False, "(2)", "A, B, S_T do not partition V")
    if any(c & a and c & ~a for c in comps):
        return Verdict(False, "(2)", "A is not a union of components")
    if len(t) == 3 and not 5 <= popcount(s) <= 6:
        return Verdict(False, "(3)", f"|S_T| = {popcount(s)} for a triangle seed")
    if len(t) == 2 and (popcount(s) != 5 or popcount(a) < 2 or popcount(b) < 2):
        return Verdict(False, "(4)", "edge seed needs |S_T| = 5 and both sides of size >= 2")
    return PASS


def enumerate_quadruples(g: Graph, x: int, *, budget: int = 2_000_000) -> Iterator[Quadruple]:
    """Every quadruple at x: seeds in order, cuts by size then lexicographically,
    then every split of the components into nonempty A and B."""
    for t in seeds_at(g, x):
        lo, hi = (5, 5) if len(t) == 2 else (5, 6)
        for cut in enumerate_cuts(g, hi, t, min_order=lo, budget=budget):
            comps = [to_mask(c) for c in cut.shores]
            k = len(comps)
            for pick in range(1, (1 << k) - 1):
                a = 0
                for i in range(k):
                    if (pick >> i) & 1:
                        a |= comps[i]
                b = g.full & ~a & ~to_mask(cut.vertices)
                if len(t) == 2 and (popcount(a) < 2 or popcount(b) < 2):
                    continue
                yield Quadruple(t, cut.vertices, tuple(iter_bits(a)), tuple(iter_bits(b)), x)


def min_quadruple(g: Graph, x: int) -> Quadruple | None:
    """Quadruple with |A| minimum; ties by (|S_T|, S_T, A)."""
    best = None
    for q in enumerate_quadruples(g, x):
        if best is None or q.sort_key() < best.sort_key():
            best = q
    return best


def minimal_quadruples(g: Graph, x: int) -> list[Quadruple]:
    """All quadruples at x attaining the minimum |A|."""
    qs = list(enumerate_quadruples(g, x))
    if not qs:
        return []
    m = min(len(q.a_side) for q in qs)
    return [q for q in qs if len(q.a_side) == m]


def _require_5_connected(g: Graph) -> None:
    if g.n < 6 or vertex_connectivity(g)[0] < 5:
        raise NotFiveConnected("graph is not 5-connected")


def check_quadruple_sides(g: Graph, x: int) -> bool:
    """G contains K4- or every quadruple at x has both sides of size >= 5."""
    _require_5_connected(g)
    if find_k4_minus(g) is not None:
        return True
    return all(len(q.a_side) >= 5 and len(q.b_side) >= 5 for q in enumerate_quadruples(g, x))


def contractible_seed(g: Graph, x: int) -> tuple[int, ...] | None:
    """First edge or triangle at x whose contraction stays 5-connected.

    Contracted graphs use the stricter reading of 5-connected that also asks
    for at least 7 vertices.
    """
    for t in seeds_at(g, x):
        h, _ = contract(g, t)
        if is_k_connected(h, 5, convention="C"):
            return t
    return None


def is_contraction_critical_at(g: Graph, x: int) -> bool:
    _require_5_connected(g)
    return contractible_seed(g, x) is None


def quadruple_for_edge(g: Graph, x: int, a: int) -> Quadruple:
    """A quadruple at x whose seed contains the edge ax.

    Take a 5-cut through {a, x}; if it leaves no single-vertex component the
    edge itself is the seed.  Otherwise a lone vertex y sees all of the cut,
    so {a, x, y} is a triangle, and a 5- or 6-cut through it gives the seed.

    Both steps read "G/T is not 5-connected" as "some small cut contains T".
    Under Convention C that reading needs G/T to keep 7 vertices, so graphs
    on fewer than 9 vertices are outside the recipe's hypothesis.
    """
    if g.n < MIN_RECIPE_N:
        raise HypothesisFailed(f"recipe needs at least {MIN_RECIPE_N} vertices", which="small")
    if not g.has_edge(x, a):
        raise HypothesisFailed(f"{a}{x} is not an edge", which="edge")
    if not is_contraction_critical_at(g, x):
        raise HypothesisFailed(f"graph is not contraction-critical at {x}", which="critical")
    t1 = tuple(sorted((a, x)))
    cut = next(iter(enumerate_cuts(g, 5, t1, min_order=5)), None)
    if cut is None:
        raise NotFound(f"no 5-cut contains the edge {t1}")
    trivial = [s for s in cut.shores if len(s) == 1]
    if not trivial:
        c = cut.shores[0]
        d = tuple(sorted(v for s in cut.shores[1:] for v in s))
        q = Quadruple(t1, cut.vertices, tuple(c), d, x)
    else:
        y = trivial[0][0]
        t2 = tuple(sorted((a, x, y)))
        cut2 = next(iter(enumerate_cuts(g, 6, t2, min_order=5)), None)
        if cut2 is None:
            raise NotFound(f"no 5- or 6-cut contains the triangle {t2}")
        c = cut2.shores[0]
        d = tuple(sorted(v for s in cut2.shores[1:] for v in s))
        q = Quadruple(t2, cut2.vertices, tuple(c), d, x)
    verdict = verify_quadruple(g, q)
    if not verdict:
        raise NotFound(f"recipe produced an invalid quadruple: {verdict}")
    return q
