"""TK5 witnesses: verification, exhaustive search, and a structured search
that contracts a connected set M, searches G/M, and lifts the result."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .bits import iter_bits, popcount, to_mask
from .errors import BudgetExceeded, LiftFailed
from .flow import VertexFlow
from .graph import Graph, contract, find_k4_minus, is_k_connected, vertex_connectivity
from .planarity import is_planar
from .subdivision import K5_PATTERN, PathPacker, Verdict, pair_key, verify_subdivision

DEFAULT_TK5_BUDGET = 5_000_000


@dataclass(frozen=True)
class TK5Witness:
    branch: tuple[int, ...]
    paths: dict[tuple[int, int], tuple[int, ...]] = field(hash=False)

    def to_json(self) -> dict:
        return {
            "branch": list(self.branch),
            "paths": {f"{u}-{v}": list(p) for (u, v), p in sorted(self.paths.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> TK5Witness:
        paths = {}
        for key, p in data["paths"].items():
            u, v = (int(s) for s in key.split("-"))
            paths[(u, v)] = tuple(p)
        return cls(tuple(data["branch"]), paths)


def verify_tk5(g: Graph, w: TK5Witness) -> Verdict:
    return verify_subdivision(g, w.branch, w.paths, K5_PATTERN)


def _normalise(paths: dict[tuple[int, int], Sequence[int]]) -> dict[tuple[int, int], tuple[int, ...]]:
    out = {}
    for (u, v), p in paths.items():
        p = tuple(p)
        out[pair_key(u, v)] = p if p[0] < p[-1] else p[::-1]
    return out


def branch_order(g: Graph, pool: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Candidate branch 5-sets of degree >= 4 vertices, by descending degree
    sum, then lexicographically."""
    cands = [v for v in (range(g.n) if pool is None else pool) if g.degree(v) >= 4]
    sets = list(combinations(sorted(cands), 5))
    sets.sort(key=lambda s: (-sum(g.degree(v) for v in s), s))
    return sets


def _fans_ok(g: Graph, branch: Sequence[int]) -> bool:
    bmask = to_mask(branch)
    interior = g.full & ~bmask
    for b in branch:
        net = VertexFlow(g.adj, b, bmask & ~(1 << b), allowed=interior)
        if net.run(4) < 4:
            return False
    return True


def search_branch_sets(g: Graph, branch_sets: Iterable[Sequence[int]], packer: PathPacker) -> TK5Witness | None:
    for branch in branch_sets:
        branch = tuple(branch)
        if not _fans_ok(g, branch):
            continue
        bmask = to_mask(branch)
        pairs = [(branch[i], branch[j]) for i, j in K5_PATTERN]
        got = packer.pack(pairs, g.full & ~bmask)
        if got is not None:
            return TK5Witness(tuple(sorted(branch)), _normalise(got))
    return None


def find_tk5(g: Graph, *, budget: int | None = DEFAULT_TK5_BUDGET) -> TK5Witness | None:
    """Exhaustive search over branch 5-sets with fail-first path packing."""
    packer = PathPacker(g, budget)
    w = search_branch_sets(g, branch_order(g), packer)
    if w is not None:
        assert verify_tk5(g, w), "search produced an invalid witness"
    return w


# ---------------------------------------------------------------------------
# lifting through a contraction
# ---------------------------------------------------------------------------


def _path_inside(g: Graph, p: int, q: int, inside: int) -> list[int] | None:
    """Shortest p-q path whose interior lies in ``inside``."""
    parent = {p: -1}
    queue = deque([p])
    while queue:
        v = queue.popleft()
        for w in iter_bits(g.adj[v]):
            if w in parent:
                continue
            if w == q:
                out = [q, v]
                while parent[out[-1]] != -1:
                    out.append(parent[out[-1]])
                return out[::-1]
            if (inside >> w) & 1:
                parent[w] = v
                queue.append(w)
    return None


def lift_witness(
    w: TK5Witness, mapping: dict[int, int], original: Graph, contracted_set: Iterable[int]
) -> TK5Witness:
    """Carry a witness in G/M back to G.

    If the merged vertex is interior to a path it is replaced by a path
    through M.  If it is a branch vertex, some r in M must send four disjoint
    paths through M to the four first vertices of the witness paths.
    """
    m = to_mask(contracted_set)
    if not m:
        raise LiftFailed("contracted set is empty")
    x_t = mapping[min(iter_bits(m))]
    back = {new: old for old, new in mapping.items() if not (m >> old) & 1}

    def lift_plain(seq: Sequence[int]) -> list[int]:
        return [back[v] for v in seq]

    paths: dict[tuple[int, int], list[int]] = {}
    branch = list(w.branch)
    if x_t in branch:
        firsts = {}
        for key, p in w.paths.items():
            seq = list(p) if p[0] == x_t else (list(reversed(p)) if p[-1] == x_t else None)
            if seq is not None:
                firsts[key] = back[seq[1]]
        targets = to_mask(firsts.values())
        for r in iter_bits(m):
            net = VertexFlow(original.adj, r, targets, allowed=m)
            if net.run(4) == 4:
                fan = {p[-1]: p for p in net.paths()}
                break
        else:
            raise LiftFailed("no vertex of M reaches the four attachments disjointly inside M")
        branch = [r if b == x_t else back[b] for b in branch]
        for key, p in w.paths.items():
            if x_t in (p[0], p[-1]):
                seq = list(p) if p[0] == x_t else list(reversed(p))
                rest = lift_plain(seq[1:])
                paths[key] = list(fan[rest[0]][:-1]) + rest
            else:
                paths[key] = lift_plain(p)
    else:
        branch = [back[b] for b in branch]
        for key, p in w.paths.items():
            if x_t in p:
                i = p.index(x_t)
                before, after = lift_plain(p[:i]), lift_plain(p[i + 1 :])
                link = _path_inside(original, before[-1], after[0], m)
                if link is None:
                    raise LiftFailed("M does not connect the neighbours of the merged vertex")
                paths[key] = before + link[1:-1] + after
            else:
                paths[key] = lift_plain(p)
    out = TK5Witness(tuple(sorted(branch)), _normalise({(p[0], p[-1]): p for p in paths.values()}))
    verdict = verify_tk5(original, out)
    if not verdict:
        raise LiftFailed(f"lifted witness fails verification: {verdict}")
    return out


# ---------------------------------------------------------------------------
# structured search
# ---------------------------------------------------------------------------


def _invariants_hold(h: Graph) -> bool:
    return is_k_connected(h, 5, convention="C") and find_k4_minus(h) is None and not is_planar(h)


def grow_contraction_set(g: Graph, x: int) -> int:
    """Greedily grow a connected M containing x while G/M stays 5-connected,
    nonplanar and K4- free."""
    m = 1 << x
    grown = True
    while grown:
        grown = False
        for v in iter_bits(g.neighborhood(m)):
            h, _ = contract(g, list(iter_bits(m | (1 << v))))
            if _invariants_hold(h):
                m |= 1 << v
                grown = True
                break
    return m


def find_tk5_structured(
    g: Graph, *, budget: int | None = DEFAULT_TK5_BUDGET
) -> tuple[TK5Witness | None, list[str]]:
    """Planar short-circuit, then a K4- seeded search, then contraction and
    lifting, then the exhaustive search.  Returns (witness, strategy trace)."""
    trace: list[str] = []
    if is_planar(g):
        trace.append("planar short-circuit")
        return None, trace
    packer = PathPacker(g, budget)
    seed = find_k4_minus(g)
    if seed is not None:
        trace.append("K4⁻ seed")
        seeded = [s for s in branch_order(g) if set(seed) <= set(s)]
        w = search_branch_sets(g, seeded, packer)
        if w is not None:
            return w, trace
    elif g.n >= 7 and _invariants_hold(g):
        for x in range(g.n):
            m = grow_contraction_set(g, x)
            if popcount(m) < 2:
                continue
            h, mapping = contract(g, list(iter_bits(m)))
            trace.append(f"contract M at {x} (|M|={popcount(m)})")
            hw = find_tk5(h, budget=budget)
            if hw is None:
                continue
            try:
                w = lift_witness(hw, mapping, g, list(iter_bits(m)))
            except LiftFailed:
                trace.append("lift failed")
                continue
            trace.append("lifted")
            return w, trace
    trace.append("exhaustive fallback")
    w = search_branch_sets(g, branch_order(g), packer)
    if w is not None:
        assert verify_tk5(g, w)
    return w, trace
