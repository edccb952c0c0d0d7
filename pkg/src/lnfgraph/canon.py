"""Canonical labeling and automorphism generators for small graphs.

Individualization-refinement: refine the ordered partition to an equitable
one, branch on the first non-singleton cell, and keep the leaf whose relabeled
adjacency rows are lexicographically largest. Leaves equal to the first or the
best leaf yield automorphisms; children of a node that lie in one orbit of the
automorphisms found so far fixing the node's path are explored once.
"""
from __future__ import annotations

from dataclasses import dataclass

from .formats import emit_graph6
from .graph import Graph, GraphError, bits_of, iter_bits, popcount

MAX_CANON_ORDER = 16


@dataclass(frozen=True)
class CanonicalLabeling:
    labels: tuple[int, ...]          # labels[v] = canonical position of vertex v
    generators: tuple[tuple[int, ...], ...]
    orbits: tuple[int, ...]          # orbits[v] = smallest vertex in v's orbit
    graph: Graph                     # the canonically relabeled graph

    @property
    def graph6(self) -> str:
        return emit_graph6(self.graph)


def _refine(adj, cells):
    """Equitable refinement of an ordered partition (list of vertex lists)."""
    cells = [c for c in cells]
    i = 0
    while i < len(cells):
        wmask = bits_of(cells[i])
        new = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            groups = {}
            for v in cell:
                groups.setdefault(popcount(adj[v] & wmask), []).append(v)
            if len(groups) == 1:
                new.append(cell)
            else:
                split = True
                for key in sorted(groups):
                    new.append(groups[key])
        if split:
            cells = new
            i = 0
        else:
            i += 1
    return cells


def _orbit_roots(n, gens):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [find(v) for v in range(n)]


class _Search:
    def __init__(self, g: Graph):
        self.n = g.order
        self.adj = g.adj
        self.first = None
        self.best = None
        self.gens: list[tuple[int, ...]] = []

    def cert(self, order):
        pos = [0] * self.n
        for i, v in enumerate(order):
            pos[v] = i
        return tuple(bits_of(pos[u] for u in iter_bits(self.adj[v])) for v in order), pos

    def leaf(self, order):
        cert, pos = self.cert(order)
        if self.first is None:
            self.first = (cert, pos)
            self.best = (cert, pos)
            return
        for ref_cert, ref_pos in (self.first, self.best):
            if cert == ref_cert:
                # vertex at position i in the reference maps to vertex at position i here
                gen = tuple(order[ref_pos[v]] for v in range(self.n))
                if gen not in self.gens and any(gen[v] != v for v in range(self.n)):
                    self.gens.append(gen)
                return
        if cert > self.best[0]:
            self.best = (cert, pos)

    def run(self, cells, path):
        cells = _refine(self.adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            self.leaf([c[0] for c in cells])
            return
        explored = []
        for v in cells[target]:
            if explored:
                stab = [g for g in self.gens if all(g[p] == p for p in path)]
                if stab:
                    roots = _orbit_roots(self.n, stab)
                    if any(roots[v] == roots[w] for w in explored):
                        continue
            explored.append(v)
            rest = [w for w in cells[target] if w != v]
            self.run(cells[:target] + [[v], rest] + cells[target + 1:], path + [v])


def canonical_labeling(g: Graph, partition: list[list[int]] | None = None) -> CanonicalLabeling:
    """Canonical labeling of ``g`` (optionally respecting an ordered vertex colouring)."""
    if g.order > MAX_CANON_ORDER:
        raise GraphError(f"canonical labeling is limited to order <= {MAX_CANON_ORDER}")
    search = _Search(g)
    if g.order:
        cells = [list(c) for c in partition] if partition else [list(range(g.order))]
        search.run(cells, [])
        labels = tuple(search.best[1])
    else:
        labels = ()
    return CanonicalLabeling(
        labels=labels,
        generators=tuple(search.gens),
        orbits=tuple(_orbit_roots(g.order, search.gens)),
        graph=g.relabel(labels),
    )


def canonical_form(g: Graph) -> str:
    """graph6 string that is equal for two graphs iff they are isomorphic."""
    return canonical_labeling(g).graph6


def orbits_of_subsets(n: int, gens, width: int | None = None) -> list[int]:
    """For each bitmask over ``width`` (default n) points, the minimal mask in its orbit."""
    width = n if width is None else width
    total = 1 << width
    rep = list(range(total))
    if not gens:
        return rep
    images = []
    for g in gens:
        img = [0] * total
        for mask in range(total):
            m = 0
            for v in iter_bits(mask):
                m |= 1 << g[v]
            img[mask] = m
        images.append(img)
    seen = [False] * total
    for mask in range(total):
        if seen[mask]:
            continue
        orbit = [mask]
        seen[mask] = True
        k = 0
        while k < len(orbit):
            x = orbit[k]
            k += 1
            for img in images:
                y = img[x]
                if not seen[y]:
                    seen[y] = True
                    orbit.append(y)
        low = min(orbit)
        for x in orbit:
            rep[x] = low
    return rep


def group_elements(n: int, gens) -> list[tuple[int, ...]]:
    """All elements of the permutation group generated by ``gens`` (small groups only)."""
    identity = tuple(range(n))
    elems = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                c = tuple(g[h[v]] for v in range(n))
                if c not in elems:
                    elems.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(elems)
