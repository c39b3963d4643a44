"""Graph families and exhaustive small-graph corpora."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

import networkx as nx

from .errors import BadParameters
from .graph import Graph, vertex_connectivity
from .io import read_graph

FAMILIES = ("complete", "complete_bipartite", "circulant", "random_regular", "random_gnp", "from_file")


@dataclass(frozen=True)
class CorpusSpec:
    family: str
    params: dict = field(default_factory=dict, hash=False)
    seed: int = 0

    def label(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.family}({inner};seed={self.seed})"


def _int(params: dict, key: str, lo: int = 0) -> int:
    if key not in params:
        raise BadParameters(f"missing parameter {key!r}")
    try:
        val = int(params[key])
    except (TypeError, ValueError) as exc:
        raise BadParameters(f"parameter {key!r} must be an integer") from exc
    if val < lo:
        raise BadParameters(f"parameter {key!r} must be >= {lo}")
    return val


def generate(spec: CorpusSpec) -> Graph:
    """Deterministic graph for a family, its parameters and a seed."""
    p = spec.params
    if not 0 <= spec.seed < 1 << 64:
        raise BadParameters("seed must be a 64-bit unsigned integer")
    if spec.family == "complete":
        return Graph.from_networkx(nx.complete_graph(_int(p, "n")))
    if spec.family == "complete_bipartite":
        return Graph.from_networkx(nx.complete_bipartite_graph(_int(p, "m"), _int(p, "n")))
    if spec.family == "circulant":
        n = _int(p, "n", 1)
        jumps = p.get("jumps")
        if not jumps:
            raise BadParameters("circulant needs jumps")
        if isinstance(jumps, str):
            jumps = [int(j) for j in jumps.replace("/", " ").replace(";", " ").split()]
        if any(not 0 < int(j) <= n // 2 for j in jumps):
            raise BadParameters("circulant jumps must lie in 1..n/2")
        return Graph.from_networkx(nx.circulant_graph(n, [int(j) for j in jumps]))
    if spec.family == "random_regular":
        d, n = _int(p, "d"), _int(p, "n")
        if d >= n or (d * n) % 2:
            raise BadParameters("random_regular needs d < n and d*n even")
        return Graph.from_networkx(nx.random_regular_graph(d, n, seed=spec.seed))
    if spec.family == "random_gnp":
        n = _int(p, "n")
        try:
            prob = float(p["p"])
        except (KeyError, TypeError, ValueError) as exc:
            raise BadParameters("random_gnp needs a probability p") from exc
        if not 0.0 <= prob <= 1.0:
            raise BadParameters("p must lie in [0, 1]")
        return Graph.from_networkx(nx.gnp_random_graph(n, prob, seed=spec.seed))
    if spec.family == "from_file":
        if "path" not in p:
            raise BadParameters("from_file needs a path")
        return read_graph(p["path"], p.get("format"))
    raise BadParameters(f"unknown family {spec.family!r}; expected one of {FAMILIES}")


def atlas_graphs(max_n: int = 7, min_n: int = 1) -> Iterator[Graph]:
    """Every graph on min_n..max_n vertices up to isomorphism (max_n <= 7)."""
    if max_n > 7:
        raise BadParameters("the atlas stops at 7 vertices")
    for h in nx.graph_atlas_g():
        if min_n <= h.number_of_nodes() <= max_n:
            yield Graph.from_networkx(h)


def two_connected_graphs_8() -> list[Graph]:
    """All 2-connected graphs on 8 vertices up to isomorphism.

    Deleting any vertex of such a graph leaves a connected graph, so each one
    is a connected 7-vertex graph plus a vertex of degree >= 2.
    """
    buckets: dict[str, list[nx.Graph]] = {}
    out: list[Graph] = []
    for base in atlas_graphs(7, 7):
        if not base.is_connected():
            continue
        for k in range(2, 8):
            for nbrs in combinations(range(7), k):
                g = base.with_edges([(7, v) for v in nbrs], add_vertices=1)
                if vertex_connectivity(g)[0] < 2:
                    continue
                h = g.to_networkx()
                key = nx.weisfeiler_lehman_graph_hash(h, iterations=3)
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(h, other) for other in bucket):
                    continue
                bucket.append(h)
                out.append(g)
    return out


def named_graphs() -> dict[str, Graph]:
    gs = {
        "K4": nx.complete_graph(4),
        "K5": nx.complete_graph(5),
        "K6": nx.complete_graph(6),
        "K7": nx.complete_graph(7),
        "K3,3": nx.complete_bipartite_graph(3, 3),
        "K5,5": nx.complete_bipartite_graph(5, 5),
        "petersen": nx.petersen_graph(),
        "octahedron": nx.octahedral_graph(),
        "icosahedron": nx.icosahedral_graph(),
        "cube": nx.cubical_graph(),
        "dodecahedron": nx.dodecahedral_graph(),
    }
    return {k: Graph.from_networkx(h) for k, h in gs.items()}
