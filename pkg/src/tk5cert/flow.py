"""Unit-capacity vertex-split flow used for Menger-style path packing.

Every vertex ``v`` becomes ``v_in -> v_out`` with capacity one; graph edges
become infinite-capacity arcs ``u_out -> w_in``.  The source uses ``s_out``
directly and so has unbounded capacity.  Targets have no outgoing arcs,
which keeps them off the interior of every path.  Augmenting paths are found
by BFS over sorted arc lists, so results are deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .bits import iter_bits

INF = 1 << 30


@dataclass
class FlowResult:
    value: int
    paths: list[list[int]]
    # vertices whose in-node is reachable from the source in the residual network
    reachable: int


class VertexFlow:
    def __init__(
        self,
        adj: Sequence[int],
        source: int,
        targets: int,
        *,
        allowed: int | None = None,
        target_cap: int = 1,
    ) -> None:
        n = len(adj)
        if allowed is None:
            allowed = (1 << n) - 1
        allowed &= ~(1 << source) & ~targets
        self.source = source
        self.targets = targets
        self.sink = 2 * n
        self.cap: dict[tuple[int, int], int] = {}
        self.forward: set[tuple[int, int]] = set()
        self.out: list[list[int]] = [[] for _ in range(2 * n + 1)]

        usable = allowed | targets | (1 << source)
        for v in iter_bits(allowed):
            self._arc(2 * v, 2 * v + 1, 1)
        for t in iter_bits(targets):
            self._arc(2 * t, self.sink, target_cap)
        for u in iter_bits(usable & ~targets):
            for w in iter_bits(adj[u] & usable & ~(1 << source)):
                self._arc(2 * u + 1, 2 * w, INF)
        for lst in self.out:
            lst.sort()

    def _arc(self, a: int, b: int, c: int) -> None:
        if (a, b) not in self.cap:
            self.out[a].append(b)
            self.out[b].append(a)
            self.cap[(b, a)] = 0
            self.cap[(a, b)] = 0
        self.forward.add((a, b))
        self.cap[(a, b)] += c

    def augment(self) -> bool:
        start = 2 * self.source + 1
        parent = {start: -1}
        queue = deque([start])
        while queue and self.sink not in parent:
            a = queue.popleft()
            for b in self.out[a]:
                if b not in parent and self.cap[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if self.sink not in parent:
            return False
        b = self.sink
        while parent[b] != -1:
            a = parent[b]
            self.cap[(a, b)] -= 1
            self.cap[(b, a)] += 1
            b = a
        return True

    def run(self, limit: int | None = None) -> int:
        value = 0
        while limit is None or value < limit:
            if not self.augment():
                break
            value += 1
        return value

    def paths(self) -> list[list[int]]:
        """Decompose the current flow into source-to-target vertex paths."""
        used: dict[tuple[int, int], int] = {}

        def remaining(a: int, b: int) -> int:
            # the reverse residual of a forward arc is the flow it carries
            return self.cap[(b, a)] - used.get((a, b), 0)

        result = []
        start = 2 * self.source + 1
        while True:
            a = start
            path = [self.source]
            while a != self.sink:
                nxt = next(
                    (b for b in self.out[a] if (a, b) in self.forward and remaining(a, b) > 0),
                    None,
                )
                if nxt is None:
                    return result
                used[(a, nxt)] = used.get((a, nxt), 0) + 1
                if nxt != self.sink and nxt % 2 == 0:
                    v = nxt // 2
                    if v in path:
                        del path[path.index(v) + 1:]
                    else:
                        path.append(v)
                a = nxt
            result.append(path)

    def min_cut(self) -> int:
        """Vertices whose unit vertex-arc crosses the residual cut."""
        seen = self._residual_closure()
        mask = 0
        for a in seen:
            if a != self.sink and a % 2 == 0 and a + 1 not in seen and (a, a + 1) in self.forward:
                mask |= 1 << (a // 2)
        return mask

    def _residual_closure(self) -> set[int]:
        start = 2 * self.source + 1
        seen = {start}
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for b in self.out[a]:
                if b not in seen and self.cap[(a, b)] > 0:
                    seen.add(b)
                    queue.append(b)
        return seen

    def reachable(self) -> int:
        seen = self._residual_closure()
        mask = 0
        for a in seen:
            if a != self.sink and a % 2 == 0:
                mask |= 1 << (a // 2)
        return mask


def max_vertex_flow(
    adj: Sequence[int],
    source: int,
    targets: int,
    *,
    allowed: int | None = None,
    target_cap: int = 1,
    limit: int | None = None,
) -> FlowResult:
    net = VertexFlow(adj, source, targets, allowed=allowed, target_cap=target_cap)
    value = net.run(limit)
    return FlowResult(value, net.paths(), net.reachable())
