"""Immutable simple undirected graphs on dense vertex indices 0..n-1.

Adjacency is a tuple of Python-int bitsets (bit ``u`` of ``adj[v]`` set iff
``uv`` is an edge). Graphs are values: equality and hashing go through
``(order, adj)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_ORDER = 10_000

VertexSet = frozenset  # frozenset[int]


class GraphError(ValueError):
    """Invalid vertex, malformed adjacency or order outside the supported range."""


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def bits_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class Graph:
    order: int
    adj: tuple[int, ...]
    _check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if not 0 <= self.order <= MAX_ORDER:
            raise GraphError(f"order {self.order} outside 0..{MAX_ORDER}")
        if len(self.adj) != self.order:
            raise GraphError("adjacency length differs from order")
        if not self._check:
            return
        full = (1 << self.order) - 1
        for v, row in enumerate(self.adj):
            if row & ~full or row < 0:
                raise GraphError(f"vertex {v} has a neighbor index >= order")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> Graph:
        b = GraphBuilder(order)
        b.add_edges(edges)
        return b.freeze()

    @classmethod
    def empty(cls, order: int) -> Graph:
        return cls(order, (0,) * order)

    @cached_property
    def size(self) -> int:
        return sum(popcount(r) for r in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        out = []
        for v, row in enumerate(self.adj):
            for u in iter_bits(row >> (v + 1)):
                out.append((v, v + 1 + u))
        return out

    def neighbors(self, v: int) -> list[int]:
        _check_vertex(self, v)
        return list(iter_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.adj]

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(indptr, indices)`` arrays for the numeric kernels."""
        degs = self.degrees()
        indptr = np.zeros(self.order + 1, dtype=np.int64)
        if self.order:
            indptr[1:] = np.cumsum(degs)
        indices = np.empty(int(indptr[-1]), dtype=np.int64)
        pos = 0
        for row in self.adj:
            for u in iter_bits(row):
                indices[pos] = u
                pos += 1
        return indptr, indices

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        new = [0] * self.order
        for v, row in enumerate(self.adj):
            new[perm[v]] = bits_of(perm[u] for u in iter_bits(row))
        return Graph(self.order, tuple(new), _check=False)

    def add_edge(self, u: int, v: int) -> Graph:
        """Copy of this graph with the edge ``uv`` added."""
        _check_vertex(self, u)
        _check_vertex(self, v)
        if u == v:
            raise GraphError("loops are not allowed")
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.order, tuple(adj), _check=False)


class GraphBuilder:
    """Single-owner edge accumulator; ``freeze`` produces the immutable Graph."""

    def __init__(self, order: int):
        if not 0 <= order <= MAX_ORDER:
            raise GraphError(f"order {order} outside 0..{MAX_ORDER}")
        self.order = order
        self._adj = [0] * order

    def add_edge(self, u: int, v: int) -> GraphBuilder:
        if not (0 <= u < self.order and 0 <= v < self.order):
            raise GraphError(f"edge {u}-{v} out of range for order {self.order}")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        self._adj[u] |= 1 << v
        self._adj[v] |= 1 << u
        return self

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> GraphBuilder:
        for u, v in edges:
            self.add_edge(u, v)
        return self

    def freeze(self) -> Graph:
        return Graph(self.order, tuple(self._adj), _check=False)


def _check_vertex(g: Graph, v: int) -> None:
    if not isinstance(v, (int, np.integer)) or not 0 <= v < g.order:
        raise GraphError(f"vertex {v!r} out of range for order {g.order}")


def _check_set(g: Graph, s: Iterable[int]) -> frozenset:
    s = frozenset(s)
    for v in s:
        _check_vertex(g, v)
    return s


def degree(g: Graph, v: int) -> int:
    _check_vertex(g, v)
    return popcount(g.adj[v])


def min_degree(g: Graph) -> int:
    if g.order == 0:
        raise GraphError("minimum degree of the empty graph is undefined")
    return min(g.degrees())


def max_degree(g: Graph) -> int:
    if g.order == 0:
        raise GraphError("maximum degree of the empty graph is undefined")
    return max(g.degrees())


def neighborhood(g: Graph, v: int) -> frozenset:
    _check_vertex(g, v)
    return frozenset(iter_bits(g.adj[v]))


def closed_neighborhood(g: Graph, v: int) -> frozenset:
    return neighborhood(g, v) | {v}


def set_neighborhood(g: Graph, s: Iterable[int]) -> frozenset:
    """Vertices outside ``s`` with a neighbor in ``s``."""
    s = _check_set(g, s)
    m = 0
    for v in s:
        m |= g.adj[v]
    return frozenset(iter_bits(m & ~bits_of(s)))


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """``G[s]`` plus the mapping ``new index -> original vertex`` (ascending)."""
    verts = sorted(_check_set(g, s))
    index = {v: i for i, v in enumerate(verts)}
    mask = bits_of(verts)
    adj = tuple(bits_of(index[u] for u in iter_bits(g.adj[v] & mask)) for v in verts)
    return Graph(len(verts), adj, _check=False), verts


def edge_boundary(g: Graph, s: Iterable[int]) -> int:
    """Number of edges with exactly one endpoint in ``s``."""
    s = _check_set(g, s)
    mask = bits_of(s)
    return sum(popcount(g.adj[v] & ~mask) for v in s)


def delete_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    s = _check_set(g, s)
    return induced_subgraph(g, [v for v in range(g.order) if v not in s])


def is_connected(g: Graph) -> bool:
    if g.order == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << g.order) - 1


# -- small named graphs used throughout tests and examples --------------------


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)), _check=False)


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def join(a: Graph, b: Graph) -> Graph:
    """``a ∨ b``: disjoint union plus every edge between the two parts."""
    builder = GraphBuilder(a.order + b.order)
    builder.add_edges(a.edges())
    builder.add_edges((a.order + u, a.order + v) for u, v in b.edges())
    builder.add_edges((u, a.order + v) for u in range(a.order) for v in range(b.order))
    return builder.freeze()


def wheel(rim: int) -> Graph:
    """``C_rim ∨ K_1``; the hub is the last vertex."""
    return join(cycle(rim), complete(1))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)
