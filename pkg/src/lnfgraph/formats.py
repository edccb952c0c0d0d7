"""graph6, edge-list and DOT interchange.

graph6 layout: an order header N(n) followed by the upper triangle of the
adjacency matrix read column by column (x(0,1), x(0,2), x(1,2), x(0,3), ...),
packed six bits per byte, big-endian within the byte, each byte offset by 63.
Orders up to 62 use one header byte; up to 258047 use ``~`` plus 3 bytes;
beyond that ``~~`` plus 6 bytes.
"""
from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from .graph import Graph, GraphBuilder, GraphError

GRAPH6_HEADER = ">>graph6<<"
_WEIGHTS = np.array([32, 16, 8, 4, 2, 1], dtype=np.int64)
_SHIFTS = np.array([5, 4, 3, 2, 1, 0], dtype=np.uint8)


class ParseError(GraphError):
    """Malformed input text; ``offset`` is the 0-based byte offset of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


def _encode_order(n: int) -> list[int]:
    if n < 63:
        return [n]
    if n <= 258047:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]


def emit_graph6(g: Graph) -> str:
    n = g.order
    nbits = n * (n - 1) // 2
    bits = np.zeros(nbits + (-nbits % 6), dtype=np.uint8)
    edges = g.edges()
    if edges:
        e = np.asarray(edges, dtype=np.int64)
        bits[e[:, 1] * (e[:, 1] - 1) // 2 + e[:, 0]] = 1
    packed = bits.reshape(-1, 6) @ _WEIGHTS if len(bits) else np.zeros(0, dtype=np.int64)
    values = np.concatenate([np.asarray(_encode_order(n), dtype=np.int64), packed]) + 63
    return values.astype(np.uint8).tobytes().decode("ascii")


def parse_graph6(text: str) -> Graph:
    raw = text.strip()
    base = 0
    if raw.startswith(GRAPH6_HEADER):
        base = len(GRAPH6_HEADER)
        raw = raw[base:]
    if not raw:
        raise ParseError("empty graph6 string", base)
    vals = []
    for i, ch in enumerate(raw):
        c = ord(ch)
        if not 63 <= c <= 126:
            raise ParseError(f"invalid graph6 character {ch!r}", base + i)
        vals.append(c - 63)

    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise ParseError("truncated 8-byte order header", base + len(vals))
        n, pos = 0, 8
        for v in vals[2:8]:
            n = (n << 6) | v
    else:
        if len(vals) < 4:
            raise ParseError("truncated 4-byte order header", base + len(vals))
        n, pos = 0, 4
        for v in vals[1:4]:
            n = (n << 6) | v

    nbits = n * (n - 1) // 2
    expected = pos + (nbits + 5) // 6
    if len(vals) != expected:
        where = min(len(vals), expected)
        raise ParseError(f"expected {expected} bytes for order {n}, got {len(vals)}", base + where)
    try:
        builder = GraphBuilder(n)
    except GraphError as exc:
        raise ParseError(str(exc), base) from None

    body = np.asarray(vals[pos:], dtype=np.uint8)
    if nbits % 6 and body[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise ParseError("nonzero padding bits", base + len(vals) - 1)
    bits = ((body[:, None] >> _SHIFTS) & 1).ravel()[:nbits]
    ones = np.flatnonzero(bits)
    if len(ones):
        tri = np.arange(n, dtype=np.int64) * (np.arange(n, dtype=np.int64) - 1) // 2
        js = np.searchsorted(tri, ones, side="right") - 1
        iis = ones - tri[js]
        builder.add_edges(zip(iis.tolist(), js.tolist()))
    return builder.freeze()


def emit_edge_list(g: Graph) -> str:
    lines = [f"# order {g.order}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str, order: int | None = None) -> Graph:
    """Parse ``u v`` lines (0-based). ``# order N`` declares isolated trailing vertices."""
    edges = []
    declared = order
    offset = 0
    for line in text.splitlines(keepends=True):
        body = line.strip()
        if body.startswith("#"):
            parts = body[1:].split()
            if len(parts) == 2 and parts[0] == "order":
                try:
                    declared = int(parts[1])
                except ValueError:
                    raise ParseError("bad order directive", offset) from None
        elif body:
            parts = body.split()
            if len(parts) != 2:
                raise ParseError(f"expected 'u v', got {body!r}", offset)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"non-integer vertex in {body!r}", offset) from None
            if u < 0 or v < 0 or u == v:
                raise ParseError(f"invalid edge {body!r}", offset)
            edges.append((u, v))
        offset += len(line.encode("utf-8"))
    n = max((max(e) + 1 for e in edges), default=0)
    if declared is not None:
        if declared < n:
            raise ParseError(f"edge endpoint {n - 1} exceeds declared order {declared}", 0)
        n = declared
    return Graph.from_edges(n, edges)


def parse_graph(text: str) -> Graph:
    """Sniff graph6 vs edge list."""
    body = text.strip()
    if body.startswith(GRAPH6_HEADER) or (body and "\n" not in body and " " not in body
                                          and not body.startswith("#")):
        return parse_graph6(body)
    return parse_edge_list(text)


def emit_dot(g: Graph, labels: Sequence[str] | Mapping[int, str] | None = None,
             name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.order):
        if labels is not None and (v in labels if isinstance(labels, Mapping) else v < len(labels)):
            lines.append(f'  {v} [label="{labels[v]}"];')
        else:
            lines.append(f"  {v};")
    lines.extend(f"  {u} -- {v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"
