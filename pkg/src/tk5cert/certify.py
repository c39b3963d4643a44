"""One verifiable certificate per graph: a cut of size at most 4, a planar
embedding, or a TK5."""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import BudgetExceeded, KindMismatch, NotFound, TheoremViolation
from .graph import Cut, Graph, is_cut, vertex_connectivity
from .io import to_graph6
from .planarity import PlanarEmbedding, planarity, verify_embedding
from .subdivision import PASS, Verdict
from .tk5 import TK5Witness, find_tk5, find_tk5_structured, verify_tk5

MAX_CERTIFY_N = 64
KINDS = ("TK5", "Planar", "SmallCut")
DECISION_ORDER = "cut -> planar -> TK5"


@dataclass
class Certificate:
    kind: str
    payload: TK5Witness | PlanarEmbedding | Cut
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"kind": self.kind, "payload": self.payload.to_json(), "meta": self.meta}

    @classmethod
    def from_json(cls, data: dict) -> Certificate:
        kind = data.get("kind")
        payload = data.get("payload", {})
        if kind == "TK5":
            body = TK5Witness.from_json(payload)
        elif kind == "Planar":
            body = PlanarEmbedding.from_json(payload)
        elif kind == "SmallCut":
            body = Cut.from_json(payload)
        else:
            raise KindMismatch(f"unknown certificate kind {kind!r}")
        return cls(kind, body, data.get("meta", {}))


def graph_hash(g: Graph) -> str:
    return hashlib.sha256(to_graph6(g).encode()).hexdigest()


def certify(g: Graph, *, force_tk5: bool = False, budget: int | None = None) -> Certificate:
    """Stage order: a minimum cut if the connectivity is at most 4, else a
    planar embedding, else a TK5.  ``force_tk5`` goes straight to the TK5 stage."""
    if g.n > MAX_CERTIFY_N:
        raise BudgetExceeded(f"graph has {g.n} vertices; the limit is {MAX_CERTIFY_N}")
    start = time.perf_counter()
    meta: dict = {"input_hash": graph_hash(g), "decision_order": DECISION_ORDER, "strategy": []}

    def done(kind: str, payload) -> Certificate:
        meta["seconds"] = round(time.perf_counter() - start, 6)
        return Certificate(kind, payload, meta)

    kwargs = {} if budget is None else {"budget": budget}
    if force_tk5:
        meta["strategy"].append("forced TK5 search")
        w, trace = find_tk5_structured(g, **kwargs)
        meta["strategy"] += trace
        if w is None and "planar short-circuit" in trace:
            w = find_tk5(g, **kwargs)
        if w is None:
            raise NotFound("graph contains no TK5")
        return done("TK5", w)

    if g.n >= 2:
        kappa, cut = vertex_connectivity(g)
        meta["connectivity"] = kappa
        if cut is not None and kappa <= 4:
            meta["strategy"].append("minimum cut")
            return done("SmallCut", cut)
    result = planarity(g)
    if isinstance(result, PlanarEmbedding):
        meta["strategy"].append("planar embedding")
        return done("Planar", result)
    meta["kuratowski"] = result.kind
    w, trace = find_tk5_structured(g, **kwargs)
    meta["strategy"] += trace
    if w is None:
        raise TheoremViolation("5-connected nonplanar graph without a TK5 witness")
    return done("TK5", w)


def verify(g: Graph, c: Certificate) -> Verdict:
    """Re-check a certificate against g with the kind's own verifier."""
    if c.kind == "TK5":
        if not isinstance(c.payload, TK5Witness):
            raise KindMismatch("TK5 certificate without a TK5 witness")
        return verify_tk5(g, c.payload)
    if c.kind == "Planar":
        if not isinstance(c.payload, PlanarEmbedding):
            raise KindMismatch("Planar certificate without an embedding")
        return verify_embedding(g, c.payload)
    if c.kind == "SmallCut":
        if not isinstance(c.payload, Cut):
            raise KindMismatch("SmallCut certificate without a cut")
        return verify_cut(g, c.payload)
    raise KindMismatch(f"unknown certificate kind {c.kind!r}")


def verify_cut(g: Graph, cut: Cut) -> Verdict:
    verts = list(cut.vertices)
    if len(verts) > 4:
        return Verdict(False, "size", f"cut has {len(verts)} vertices, more than 4")
    if len(set(verts)) != len(verts) or any(not 0 <= v < g.n for v in verts):
        return Verdict(False, "vertices", "cut vertices are repeated or out of range")
    if not is_cut(g, verts):
        return Verdict(False, "separation", "removing the vertices leaves the graph connected")
    if cut.shores:
        shores = [set(s) for s in cut.shores]
        rest = set(range(g.n)) - set(verts)
        if set().union(*shores) != rest or sum(len(s) for s in shores) != len(rest):
            return Verdict(False, "shores", "shores do not partition the remaining vertices")
        for s in shores:
            if any(w in rest and w not in s for v in s for w in g.neighbors(v)):
                return Verdict(False, "shores", "a shore is not a whole component")
            if not _connected(g, s):
                return Verdict(False, "shores", "a shore is not connected")
    return PASS


def _connected(g: Graph, verts: set[int]) -> bool:
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w in verts and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == verts


# ---------------------------------------------------------------------------
# property sweeps
# ---------------------------------------------------------------------------


@dataclass
class SweepEntry:
    name: str
    prop: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0


@dataclass
class SweepReport:
    entries: list[SweepEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def failures(self) -> list[SweepEntry]:
        return [e for e in self.entries if not e.ok]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "count": len(self.entries),
            "failures": [e.__dict__ for e in self.failures()],
            "entries": [e.__dict__ for e in self.entries],
        }


def _prop_dichotomy(g: Graph) -> tuple[bool, str]:
    c = certify(g)
    v = verify(g, c)
    return bool(v), c.kind if v else f"{c.kind}: {v}"


def _prop_tk5_exists(g: Graph) -> tuple[bool, str]:
    if g.n < 6 or vertex_connectivity(g)[0] < 5:
        return True, "not 5-connected"
    if isinstance(planarity(g), PlanarEmbedding):
        return True, "planar"
    w = find_tk5(g)
    if w is None:
        return False, "5-connected nonplanar without TK5"
    v = verify_tk5(g, w)
    return bool(v), "TK5" if v else str(v)


def _prop_quadruple_sides(g: Graph) -> tuple[bool, str]:
    from .quadruples import check_quadruple_sides

    if g.n < 6 or vertex_connectivity(g)[0] < 5:
        return True, "not 5-connected"
    bad = [x for x in range(g.n) if not check_quadruple_sides(g, x)]
    return not bad, f"fails at {bad}" if bad else "holds"


def _prop_triangle_seed(g: Graph) -> tuple[bool, str]:
    from .graph import find_k4_minus
    from .quadruples import is_contraction_critical_at, minimal_quadruples

    if g.n < 6 or vertex_connectivity(g)[0] < 5:
        return True, "not 5-connected"
    if find_k4_minus(g) is not None:
        return True, "contains K4-"
    bad = []
    for x in range(g.n):
        if is_contraction_critical_at(g, x):
            if any(len(q.t) != 3 for q in minimal_quadruples(g, x)):
                bad.append(x)
    return not bad, f"K2 seed minimal at {bad}" if bad else "holds"


PROPERTIES: dict[str, Callable[[Graph], tuple[bool, str]]] = {
    "dichotomy": _prop_dichotomy,
    "tk5_exists": _prop_tk5_exists,
    "quadruple_sides": _prop_quadruple_sides,
    "triangle_seed": _prop_triangle_seed,
}


def sweep(graphs: Iterable[tuple[str, Graph]], properties: Iterable[str]) -> SweepReport:
    """Run each named property on each graph; exceptions count as failures."""
    props = list(properties)
    for p in props:
        if p not in PROPERTIES:
            raise KeyError(f"unknown property {p!r}; expected one of {sorted(PROPERTIES)}")
    report = SweepReport()
    for name, g in graphs:
        for p in props:
            start = time.perf_counter()
            try:
                ok, detail = PROPERTIES[p](g)
            except Exception as exc:  # noqa: BLE001 - reported, not raised
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            report.entries.append(SweepEntry(name, p, ok, detail, round(time.perf_counter() - start, 6)))
    return report
