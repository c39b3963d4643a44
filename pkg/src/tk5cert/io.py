"""Graph input/output: graph6 (bit-exact) and whitespace edge lists."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

from .errors import ParseError
from .graph import Graph

HEADER = ">>graph6<<"


def _encode_size(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def _decode_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise ParseError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        chunk, start = data[2:8], 8
    else:
        chunk, start = data[1:4], 4
    if len(chunk) not in (3, 6):
        raise ParseError("truncated graph6 size field")
    n = 0
    for b in chunk:
        n = (n << 6) | (b - 63)
    return n, start


def to_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            bits.append((row >> i) & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = bytes(
        63 + sum(bit << (5 - k) for k, bit in enumerate(bits[i : i + 6])) for i in range(0, len(bits), 6)
    )
    return (_encode_size(g.n) + body).decode("ascii")


def from_graph6(text: str | bytes) -> Graph:
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(HEADER.encode()):
        data = data[len(HEADER):]
    if any(b < 63 or b > 126 for b in data):
        raise ParseError("graph6 bytes must lie in 63..126")
    n, pos = _decode_size(data)
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    rows = [0] * n
    k = 0
    bitstream = []
    for b in body:
        v = b - 63
        bitstream.extend((v >> (5 - s)) & 1 for s in range(6))
    for j in range(1, n):
        for i in range(j):
            if bitstream[k]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def parse_edgelist(lines: Iterable[str], n: int | None = None) -> Graph:
    """Edges as ``u v`` per line, 0-based.  ``#`` starts a comment.

    A line with a single integer declares an isolated vertex.
    """
    edges = []
    top = -1
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError as exc:
            raise ParseError(f"line {lineno}: expected integers, got {raw.strip()!r}") from exc
        if len(nums) == 1:
            top = max(top, nums[0])
            continue
        if len(nums) != 2 or min(nums) < 0:
            raise ParseError(f"line {lineno}: expected 'u v' with nonnegative ids")
        u, v = nums
        if u == v:
            raise ParseError(f"line {lineno}: self-loop at {u}")
        top = max(top, u, v)
        edges.append((u, v))
    size = top + 1 if n is None else n
    return Graph.from_edges(size, edges)


def format_edgelist(g: Graph) -> str:
    lines = [f"{u} {v}" for u, v in g.edges()]
    covered = {v for e in g.edges() for v in e}
    if g.n and (g.n - 1) not in covered:
        lines.append(str(g.n - 1))
    return "\n".join(lines) + "\n"


def iter_graph6_file(path: str | Path) -> Iterator[Graph]:
    with open(path, "rb") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield from_graph6(line)


def read_graph(path: str | Path, fmt: str | None = None) -> Graph:
    """Read one graph; ``fmt`` is ``g6`` or ``edgelist`` (guessed from suffix)."""
    path = Path(path)
    if fmt is None:
        fmt = "g6" if path.suffix in (".g6", ".graph6") else "edgelist"
    text = path.read_text()
    if fmt == "g6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise ParseError(f"{path}: expected exactly one graph6 line, found {len(lines)}")
        return from_graph6(lines[0])
    if fmt == "edgelist":
        return parse_edgelist(text.splitlines())
    raise ParseError(f"unknown graph format {fmt!r}")
