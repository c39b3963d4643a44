"""Topological-minor machinery shared by TK5 search and Kuratowski checks.

A subdivision of a pattern graph is given by an ordered tuple of branch
vertices plus one path per pattern edge.  Paths are keyed by the sorted pair
of their end vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .bits import iter_bits, popcount, to_mask
from .errors import BudgetExceeded
from .graph import Graph

K5_PATTERN: tuple[tuple[int, int], ...] = tuple(combinations(range(5), 2))
K33_PATTERN: tuple[tuple[int, int], ...] = tuple((i, j) for i in range(3) for j in range(3, 6))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    clause: str | None = None
    detail: str | None = None

    def __bool__(self) -> bool:
        return self.ok


PASS = Verdict(True)


def pair_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def verify_subdivision(
    g: Graph,
    branch: Sequence[int],
    paths: Mapping[tuple[int, int], Sequence[int]],
    pattern: Sequence[tuple[int, int]],
) -> Verdict:
    """Check that ``paths`` realise ``pattern`` on ``branch`` inside ``g``."""
    k = 1 + max(max(e) for e in pattern)
    if len(branch) != k or len(set(branch)) != k:
        return Verdict(False, "branch", f"need {k} distinct branch vertices, got {list(branch)}")
    if any(not (0 <= b < g.n) for b in branch):
        return Verdict(False, "branch", "branch vertex out of range")
    wanted = {pair_key(branch[i], branch[j]) for i, j in pattern}
    if set(paths) != wanted:
        return Verdict(False, "pairs", f"path keys {sorted(paths)} do not match pattern pairs {sorted(wanted)}")
    branch_set = set(branch)
    owner: dict[int, tuple[int, int]] = {}
    for key in sorted(wanted):
        path = list(paths[key])
        if len(path) < 2 or pair_key(path[0], path[-1]) != key:
            return Verdict(False, "endpoints", f"path for {key} runs {path[:1]}..{path[-1:]}")
        if len(set(path)) != len(path):
            return Verdict(False, "simple", f"path for {key} repeats a vertex")
        for a, b in zip(path, path[1:]):
            if not (0 <= a < g.n and 0 <= b < g.n) or not g.has_edge(a, b):
                return Verdict(False, "adjacency", f"path for {key} uses non-edge {a}-{b}")
        for v in path[1:-1]:
            if v in branch_set:
                return Verdict(False, "branch interior", f"path for {key} passes branch vertex {v}")
            if v in owner:
                return Verdict(False, "internal disjointness", f"paths {owner[v]} and {key} share {v}")
            owner[v] = key
    return PASS


def induced_paths(g: Graph, u: int, v: int, avail: int) -> list[tuple[int, ...]]:
    """All chordless u-v paths whose interior lies in ``avail``, shortest first.

    Chordless paths dominate: any other path contains the vertex set of one.
    """
    if g.has_edge(u, v):
        return [(u, v)]
    target_nbrs = g.adj[v]
    out: list[tuple[int, ...]] = []
    path = [u]

    def walk(last: int, blocked: int) -> None:
        # blocked: vertices adjacent to some path vertex other than ``last``
        for w in iter_bits(g.adj[last] & avail & ~blocked):
            path.append(w)
            if (target_nbrs >> w) & 1:
                out.append(tuple(path) + (v,))
            else:
                walk(w, blocked | g.adj[last] | (1 << last))
            path.pop()

    walk(u, to_mask((u,)) | (1 << v))
    out.sort(key=lambda p: (len(p), p))
    return out


def _reachable(g: Graph, u: int, v: int, avail: int) -> bool:
    if g.has_edge(u, v):
        return True
    seen = g.adj[u] & avail
    frontier = seen
    while frontier:
        if frontier & g.adj[v]:
            return True
        grow = 0
        for w in iter_bits(frontier):
            grow |= g.adj[w]
        frontier = grow & avail & ~seen
        seen |= frontier
    return False


class PathPacker:
    """Backtracking search for internally disjoint paths between fixed ends."""

    def __init__(self, g: Graph, budget: int | None = None) -> None:
        self.g = g
        self.budget = budget
        self.spent = 0

    def tick(self) -> None:
        self.spent += 1
        if self.budget is not None and self.spent > self.budget:
            raise BudgetExceeded(f"path packing exceeded {self.budget} search nodes", spent=self.spent)

    def pack(self, pairs: Sequence[tuple[int, int]], avail: int) -> dict[tuple[int, int], tuple[int, ...]] | None:
        g = self.g
        chosen: dict[tuple[int, int], tuple[int, ...]] = {}
        todo = []
        for u, v in pairs:
            if g.has_edge(u, v):
                chosen[pair_key(u, v)] = (u, v) if u < v else (v, u)
            else:
                todo.append(pair_key(u, v))
        failed: set[tuple[frozenset, int]] = set()
        result = self._solve(tuple(todo), avail, chosen, failed)
        return result

    def _solve(self, todo, avail, chosen, failed):
        if not todo:
            return dict(chosen)
        key = (frozenset(todo), avail)
        if key in failed:
            return None
        self.tick()
        g = self.g
        need: dict[int, int] = {}
        for u, v in todo:
            need[u] = need.get(u, 0) + 1
            need[v] = need.get(v, 0) + 1
        for b, k in need.items():
            if popcount(g.adj[b] & avail) < k:
                failed.add(key)
                return None
        options = []
        for pair in todo:
            if not _reachable(g, pair[0], pair[1], avail):
                failed.add(key)
                return None
        for pair in todo:
            cands = induced_paths(g, pair[0], pair[1], avail)
            if not cands:
                failed.add(key)
                return None
            options.append((len(cands), pair, cands))
        options.sort(key=lambda t: (t[0], t[1]))
        _, pair, cands = options[0]
        rest = tuple(p for p in todo if p != pair)
        for path in cands:
            used = to_mask(path[1:-1])
            if path[0] != pair[0]:
                path = path[::-1]
            chosen[pair] = path
            got = self._solve(rest, avail & ~used, chosen, failed)
            if got is not None:
                return got
            del chosen[pair]
        failed.add(key)
        return None


def find_subdivision(
    g: Graph,
    pattern: Sequence[tuple[int, int]],
    branch_sets: Iterable[Sequence[int]],
    *,
    budget: int | None = None,
) -> tuple[tuple[int, ...], dict[tuple[int, int], tuple[int, ...]]] | None:
    """First branch tuple (in the given order) whose pattern paths can be packed."""
    packer = PathPacker(g, budget)
    for branch in branch_sets:
        branch = tuple(branch)
        bmask = to_mask(branch)
        pairs = [(branch[i], branch[j]) for i, j in pattern]
        got = packer.pack(pairs, g.full & ~bmask)
        if got is not None:
            return branch, got
    return None


def k33_branch_sets(g: Graph) -> Iterable[tuple[int, ...]]:
    cands = [v for v in range(g.n) if g.degree(v) >= 3]
    for six in combinations(cands, 6):
        first = six[0]
        for side in combinations(six[1:], 2):
            left = (first,) + side
            right = tuple(v for v in six if v not in left)
            yield left + right
