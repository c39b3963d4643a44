"""Immutable simple graphs on dense vertex indices, with bitset adjacency.

Vertex sets throughout the package are plain ``int`` bitmasks internally and
sorted tuples at API boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .bits import iter_bits, lowest, popcount, to_mask
from .errors import BudgetExceeded, DisconnectedContractionSet, EmptySet, TooSmall
from .flow import VertexFlow

DEFAULT_ENUM_BUDGET = 2_000_000


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if (row >> v) & 1:
                raise ValueError(f"self-loop at {v}")
            for w in iter_bits(row):
                if not (self.adj[w] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {w}")

    @classmethod
    def trusted(cls, n: int, adj: tuple[int, ...]) -> Graph:
        """Build without validation; for rows produced by this package."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        object.__setattr__(g, "labels", None)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), tuple(labels) if labels is not None else None)

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def neighborhood(self, mask: int) -> int:
        """N(S): vertices outside ``mask`` adjacent to something inside it."""
        out = 0
        for v in iter_bits(mask):
            out |= self.adj[v]
        return out & ~mask

    def components(self, mask: int | None = None) -> list[int]:
        """Connected components of the subgraph induced by ``mask``."""
        if mask is None:
            mask = self.full
        comps = []
        rest = mask
        while rest:
            seed = rest & -rest
            comp = seed
            frontier = seed
            while frontier:
                grow = 0
                for v in iter_bits(frontier):
                    grow |= self.adj[v]
                frontier = grow & rest & ~comp
                comp |= frontier
            comps.append(comp)
            rest &= ~comp
        return comps

    def is_connected(self, mask: int | None = None) -> bool:
        if mask is None:
            mask = self.full
        return mask == 0 or len(self.components(mask)) == 1

    def induced(self, vertices: Iterable[int] | int) -> tuple[Graph, list[int]]:
        """Induced subgraph plus the list mapping new indices to old ones."""
        mask = vertices if isinstance(vertices, int) else to_mask(vertices)
        keep = list(iter_bits(mask))
        index = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            rows.append(to_mask(index[w] for w in iter_bits(self.adj[v] & mask)))
        labels = tuple(self.labels[v] for v in keep) if self.labels else None
        g = Graph.trusted(len(keep), tuple(rows))
        object.__setattr__(g, "labels", labels)
        return g, keep

    def delete(self, vertices: Iterable[int] | int) -> tuple[Graph, list[int]]:
        mask = vertices if isinstance(vertices, int) else to_mask(vertices)
        return self.induced(self.full & ~mask)

    def with_edges(self, extra: Iterable[tuple[int, int]], add_vertices: int = 0) -> Graph:
        rows = list(self.adj) + [0] * add_vertices
        for u, v in extra:
            if u != v:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        return Graph.trusted(self.n + add_vertices, tuple(rows))

    def without_edges(self, gone: Iterable[tuple[int, int]]) -> Graph:
        rows = list(self.adj)
        for u, v in gone:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows), self.labels)

    def to_networkx(self):
        import networkx as nx

        nxg = nx.Graph()
        nxg.add_nodes_from(range(self.n))
        nxg.add_edges_from(self.edges())
        return nxg

    @classmethod
    def from_networkx(cls, nxg) -> Graph:
        nodes = sorted(nxg.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in nxg.edges() if u != v))


@dataclass(frozen=True)
class Separation:
    """A pair of vertex sets covering the graph; every edge lies inside one side."""

    side1: tuple[int, ...]
    side2: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(set(self.side1) & set(self.side2))

    def is_valid(self, g: Graph) -> bool:
        a, b = to_mask(self.side1), to_mask(self.side2)
        if a | b != g.full:
            return False
        only_a, only_b = a & ~b, b & ~a
        if any(g.adj[v] & only_b for v in iter_bits(only_a)):
            return False
        sep = a & b
        free_edges = sum(popcount(g.adj[v] & sep) for v in iter_bits(sep)) // 2
        # a side with no private vertex must be handed an edge inside the overlap
        return (not only_a) + (not only_b) <= free_edges


@dataclass(frozen=True)
class Cut:
    vertices: tuple[int, ...]
    shores: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "shores": [list(s) for s in self.shores]}

    @classmethod
    def from_json(cls, data: dict) -> Cut:
        return cls(tuple(data["vertices"]), tuple(tuple(s) for s in data.get("shores", [])))


def make_cut(g: Graph, mask: int) -> Cut | None:
    comps = g.components(g.full & ~mask)
    if len(comps) < 2:
        return None
    return Cut(tuple(iter_bits(mask)), tuple(tuple(iter_bits(c)) for c in comps))


def is_cut(g: Graph, vertices: Iterable[int]) -> bool:
    """Independent re-check: removing ``vertices`` leaves at least two components."""
    removed = set(vertices)
    if not removed <= set(range(g.n)):
        return False
    rest = [v for v in range(g.n) if v not in removed]
    if len(rest) < 2:
        return False
    seen = {rest[0]}
    stack = [rest[0]]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) < len(rest)


def contract(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Contract the connected set ``s`` to one vertex.

    The merged vertex takes the slot of ``min(s)``; other vertices keep their
    relative order.  Returns the contracted graph and the old-to-new map.
    """
    mask = to_mask(s)
    if not mask:
        raise EmptySet("contraction set is empty")
    if not g.is_connected(mask):
        raise DisconnectedContractionSet(f"{sorted(iter_bits(mask))} does not induce a connected subgraph")
    rep = lowest(mask)
    mapping: dict[int, int] = {}
    nxt = 0
    for v in range(g.n):
        if (mask >> v) & 1 and v != rep:
            continue
        mapping[v] = nxt
        nxt += 1
    for v in iter_bits(mask):
        mapping[v] = mapping[rep]
    rows = [0] * nxt
    for u, v in g.edges():
        a, b = mapping[u], mapping[v]
        if a != b:
            rows[a] |= 1 << b
            rows[b] |= 1 << a
    return Graph.trusted(nxt, tuple(rows)), mapping


def local_connectivity(g: Graph, s: int, t: int, limit: int | None = None) -> tuple[int, int]:
    """Max number of internally disjoint s-t paths and a minimum separating set."""
    net = VertexFlow(g.adj, s, 1 << t, target_cap=g.n + 1)
    value = net.run(limit)
    return value, net.min_cut()


def vertex_connectivity(g: Graph) -> tuple[int, Cut | None]:
    """kappa(g) by Menger path counting, with a minimum cut when one exists."""
    if g.n < 2:
        raise TooSmall("vertex connectivity needs at least two vertices")
    comps = g.components()
    if len(comps) > 1:
        return 0, Cut((), tuple(tuple(iter_bits(c)) for c in comps))
    best = g.n - 1
    best_cut: int | None = None
    i = 0
    # a vertex among the first best+1 lies outside some minimum cut
    while i <= best and i < g.n:
        for j in range(g.n):
            if j == i or g.has_edge(i, j):
                continue
            value, cut = local_connectivity(g, i, j, limit=best)
            if value < best:
                value, cut = local_connectivity(g, i, j)
                best, best_cut = value, cut
        i += 1
    if best_cut is None:
        return best, None
    return best, make_cut(g, best_cut)


def is_two_connected(g: Graph) -> bool:
    """n >= 3, connected, and no cut vertex; one bitset search per deletion."""
    if g.n < 3 or not g.is_connected():
        return False
    return all(g.is_connected(g.full & ~(1 << v)) for v in range(g.n))


def is_k_connected(g: Graph, k: int, *, convention: str = "standard") -> bool:
    """``standard``: n > k and no cut below k.  ``C``: additionally n >= k + 2."""
    floor = k + 2 if convention == "C" else k + 1
    if g.n < floor:
        return False
    if k <= 0:
        return True
    return vertex_connectivity(g)[0] >= k


def enumerate_cuts(
    g: Graph,
    max_order: int,
    containing: Iterable[int] = (),
    *,
    min_order: int = 0,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> Iterator[Cut]:
    """Every vertex cut S with min_order <= |S| <= max_order and containing ⊆ S.

    Emitted by size, then lexicographically by sorted vertex tuple.
    """
    base = tuple(sorted(set(containing)))
    base_mask = to_mask(base)
    pool = [v for v in range(g.n) if not (base_mask >> v) & 1]
    spent = 0
    for size in range(max(len(base), min_order), max_order + 1):
        extra = size - len(base)
        if extra > len(pool):
            break
        for combo in combinations(pool, extra):
            spent += 1
            if spent > budget:
                raise BudgetExceeded(f"cut enumeration exceeded {budget} candidate sets", spent=spent)
            mask = base_mask | to_mask(combo)
            cut = make_cut(g, mask)
            if cut is not None:
                yield Cut(tuple(sorted(cut.vertices)), cut.shores)


def find_k4_minus(g: Graph) -> tuple[int, int, int, int] | None:
    """Lexicographically first 4 vertices spanning at least five edges."""
    best = None
    for u, v in g.edges():
        common = g.adj[u] & g.adj[v]
        if popcount(common) < 2:
            continue
        bits = iter_bits(common)
        c1, c2 = next(bits), next(bits)
        cand = tuple(sorted((u, v, c1, c2)))
        if best is None or cand < best:
            best = cand
    return best


def triangles_at(g: Graph, x: int) -> list[tuple[int, int, int]]:
    out = []
    for a in iter_bits(g.adj[x]):
        for b in iter_bits(g.adj[x] & g.adj[a]):
            if a < b:
                out.append(tuple(sorted((x, a, b))))
    return sorted(out)
