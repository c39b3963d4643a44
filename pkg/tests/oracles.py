"""Brute-force reference implementations.  They share no search code with
the package: every oracle enumerates simple paths or cycles through
networkx and checks conditions directly."""

from __future__ import annotations

from itertools import combinations, permutations

import networkx as nx

from tk5cert.graph import Graph


def nxg(g: Graph) -> nx.Graph:
    return g.to_networkx()


def simple_paths(h: nx.Graph, s: int, t: int, banned: frozenset[int]) -> list[list[int]]:
    if s == t:
        return [[s]]
    sub = h.subgraph(set(h.nodes) - (banned - {s, t}))
    return [list(p) for p in nx.all_simple_paths(sub, s, t)]


def brute_linkage(g: Graph, pairs, mode: str = "disjoint", avail=None) -> list[list[int]] | None:
    """First system found by trying every simple path per pair in turn."""
    h = nxg(g)
    terminals = frozenset(v for pr in pairs for v in pr)
    allowed_interior = set(range(g.n)) if avail is None else set(avail)

    def rec(i: int, used: frozenset[int], acc):
        if i == len(pairs):
            return list(acc)
        s, t = pairs[i]
        for p in simple_paths(h, s, t, frozenset()):
            inner = set(p[1:-1])
            if inner & terminals or not inner <= allowed_interior:
                continue
            if mode == "disjoint":
                if set(p) & used:
                    continue
                nxt = used | set(p)
            else:
                if inner & used:
                    continue
                # earlier interiors are recorded in used
                nxt = used | inner
            res = rec(i + 1, nxt, acc + [p])
            if res is not None:
                return res
        return None

    if mode == "disjoint":
        ends = [v for pr in pairs for v in set(pr)]
        if len(ends) != len(set(ends)):
            return None
    return rec(0, frozenset(), [])


def brute_cycle_through(g: Graph, ys) -> bool:
    h = nxg(g)
    want = set(ys)
    return any(want <= set(c) for c in nx.simple_cycles(h) if len(c) >= 3)


def _packable(h: nx.Graph, pairs, branch) -> bool:
    bset = frozenset(branch)

    def rec(i, used):
        if i == len(pairs):
            return True
        s, t = pairs[i]
        for p in nx.all_simple_paths(h, s, t):
            inner = set(p[1:-1])
            if inner & bset or inner & used:
                continue
            if rec(i + 1, used | inner):
                return True
        return False

    return rec(0, frozenset())


def brute_has_tk5(g: Graph) -> bool:
    h = nxg(g)
    cands = [v for v in range(g.n) if g.degree(v) >= 4]
    for five in combinations(cands, 5):
        if _packable(h, list(combinations(five, 2)), five):
            return True
    return False


def brute_has_tk33(g: Graph) -> bool:
    h = nxg(g)
    cands = [v for v in range(g.n) if g.degree(v) >= 3]
    for six in combinations(cands, 6):
        for side in combinations(six[1:], 2):
            left = (six[0],) + side
            right = [v for v in six if v not in left]
            if _packable(h, [(a, b) for a in left for b in right], six):
                return True
    return False


def brute_triple_kinds(g: Graph, frm, to) -> set[bool]:
    """For each bijection admitting disjoint paths: does it pair b with b'?"""
    out = set()
    for perm in permutations(to):
        if brute_linkage(g, list(zip(frm, perm))) is not None:
            out.add(perm[1] == to[1])
    return out


def brute_quadruples(g: Graph, x: int) -> set[tuple]:
    """Every (T, S, A, B) at x by trying all 5- and 6-sets and all component unions."""
    h = nxg(g)
    seeds = [(x, a) for a in h[x]] + [(x, a, b) for a, b in combinations(h[x], 2) if h.has_edge(a, b)]
    out = set()
    for size in (5, 6):
        for s in combinations(range(g.n), size):
            comps = list(nx.connected_components(h.subgraph(set(range(g.n)) - set(s))))
            if len(comps) < 2:
                continue
            for t in seeds:
                if not set(t) <= set(s) or (len(t) == 2 and size != 5):
                    continue
                for k in range(1, len(comps)):
                    for pick in combinations(comps, k):
                        a = set().union(*pick)
                        b = set(range(g.n)) - set(s) - a
                        if len(t) == 2 and (len(a) < 2 or len(b) < 2):
                            continue
                        out.add((tuple(sorted(t)), s, tuple(sorted(a)), tuple(sorted(b))))
    return out


def brute_fan(g: Graph, u, targets, n, anchors=()) -> bool:
    """n independent u-paths ending in distinct targets, all anchors among
    them, with no target inside any path."""
    avail = set(range(g.n)) - set(targets) - {u}
    rest = [t for t in targets if t not in anchors]
    for extra in combinations(rest, n - len(anchors)):
        pairs = [(u, t) for t in list(anchors) + list(extra)]
        if brute_linkage(g, pairs, "independent", avail) is not None:
            return True
    return False


def minimal_path_masks(g: Graph) -> dict[frozenset, list[int]]:
    """For each vertex pair, the inclusion-minimal vertex sets of simple paths
    joining them, as bitmasks."""
    h = nxg(g)
    out = {}
    for s, t in combinations(range(g.n), 2):
        masks = sorted({sum(1 << v for v in p) for p in nx.all_simple_paths(h, s, t)}, key=lambda m: bin(m).count("1"))
        keep: list[int] = []
        for m in masks:
            if not any(k & m == k for k in keep):
                keep.append(m)
        out[frozenset((s, t))] = keep
    return out


def brute_two_linkage(masks: dict[frozenset, list[int]], s1, s2, t1, t2) -> bool:
    return any(
        not (p & q) for p in masks[frozenset((s1, t1))] for q in masks[frozenset((s2, t2))]
    )
