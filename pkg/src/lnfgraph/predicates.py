"""Local subgraphs, forests, locally (non)foresty graphs and k-connectivity for k <= 3."""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .graph import Graph, GraphError, induced_subgraph, iter_bits, neighborhood, _check_vertex


@dataclass(frozen=True)
class LocalSubgraphReport:
    vertex: int
    local_order: int
    local_size: int
    local_components: int

    @property
    def has_cycle(self) -> bool:
        return self.local_size > self.local_order - self.local_components


def local_subgraph(g: Graph, v: int) -> Graph:
    """The subgraph induced by N(v), vertices renumbered in ascending order."""
    return induced_subgraph(g, neighborhood(g, v))[0]


def components(g: Graph) -> int:
    parent = list(range(g.order))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = g.order
    for u, v in g.edges():
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            count -= 1
    return count


def _has_cycle_by_traversal(g: Graph) -> bool:
    seen = 0
    for root in range(g.order):
        if seen >> root & 1:
            continue
        seen |= 1 << root
        stack = [(root, -1)]
        while stack:
            v, parent = stack.pop()
            for u in iter_bits(g.adj[v]):
                if u == parent:
                    continue
                if seen >> u & 1:
                    return True
                seen |= 1 << u
                stack.append((u, v))
    return False


def is_forest(g: Graph, method: str = "count") -> bool:
    """True iff ``g`` has no cycle.

    ``method="count"`` uses m == n - #components, ``"traversal"`` looks for a
    non-tree edge during DFS, ``"both"`` runs the two and insists they agree.
    """
    if method == "count":
        return g.size == g.order - components(g)
    if method == "traversal":
        return not _has_cycle_by_traversal(g)
    if method == "both":
        a = is_forest(g, "count")
        b = is_forest(g, "traversal")
        if a != b:
            raise AssertionError(f"forest checks disagree on {g!r}")
        return a
    raise ValueError(f"unknown method {method!r}")


def local_reports(g: Graph) -> list[LocalSubgraphReport]:
    indptr, indices = g.csr
    sizes, comps = kernels.local_structure(indptr, indices, g.order)
    degs = g.degrees()
    return [LocalSubgraphReport(v, degs[v], int(sizes[v]), int(comps[v])) for v in range(g.order)]


def wheel_center_check(g: Graph, v: int) -> bool:
    """True iff ``v`` is the hub of a wheel, i.e. its local subgraph has a cycle."""
    _check_vertex(g, v)
    if bin(g.adj[v]).count("1") < 3:
        return False
    return not is_forest(local_subgraph(g, v))


def _require_nonempty(g: Graph) -> None:
    if g.order == 0:
        raise GraphError("the predicate is undefined on the empty graph")


def is_locally_foresty(g: Graph) -> bool:
    _require_nonempty(g)
    return not any(r.has_cycle for r in local_reports(g))


def is_locally_nonforesty(g: Graph) -> tuple[bool, int | None]:
    """``(True, None)`` if every local subgraph has a cycle, else ``(False, v)``
    with ``v`` the smallest vertex whose local subgraph is a forest."""
    _require_nonempty(g)
    degs = g.degrees()
    low = next((v for v in range(g.order) if degs[v] < 3), None)
    if low == 0:
        return False, 0
    for r in local_reports(g):
        if r.vertex == low:
            return False, low
        if not r.has_cycle:
            return False, r.vertex
    return True, None


def is_k_connected(g: Graph, k: int, method: str = "articulation") -> tuple[bool, frozenset | None]:
    """Vertex k-connectivity for k in 1..3.

    Returns ``(True, None)`` or ``(False, cut)`` where ``cut`` is the
    lexicographically first violating set: empty for a disconnected graph, a
    cut vertex, or a 2-cut. Graphs with order <= k fail with ``cut=None``.
    ``method="pairs"`` uses brute-force pair deletion for the 2-cut search.
    """
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    if g.order <= k:
        return False, None
    indptr, indices = g.csr
    if method == "articulation":
        size, a, b = kernels.small_vertex_cut(indptr, indices, g.order, k)
    elif method == "pairs":
        size, a, b = kernels.small_vertex_cut(indptr, indices, g.order, min(k, 2))
        if size == -1 and k == 3:
            a, b = kernels.pair_deletion_cut(indptr, indices, g.order)
            size = 2 if a >= 0 else -1
    else:
        raise ValueError(f"unknown method {method!r}")
    if size == -1:
        return True, None
    return False, frozenset(int(x) for x in (a, b)[:size])
