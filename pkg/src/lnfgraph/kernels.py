"""Hot loops over CSR adjacency (``indptr``, ``indices``).

Every kernel here is plain numba-compatible Python. ``_accel.njit`` compiles
them unless ``LNFGRAPH_DISABLE_NUMBA`` is set, in which case the very same
functions run interpreted; ``kernel.py_func`` always reaches the interpreted
version.
"""
import numpy as np

from ._accel import njit


@njit
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit
def local_structure(indptr, indices, n):
    """For every vertex ``v``: edges and components of the subgraph induced by N(v).

    The local subgraph has a cycle iff ``size > degree - components``.
    """
    sizes = np.zeros(n, dtype=np.int64)
    comps = np.zeros(n, dtype=np.int64)
    mark = np.full(n, -1, dtype=np.int64)
    parent = np.arange(n, dtype=np.int64)
    for v in range(n):
        lo, hi = indptr[v], indptr[v + 1]
        for p in range(lo, hi):
            u = indices[p]
            mark[u] = v
            parent[u] = u
        twice = 0
        ncomp = hi - lo
        for p in range(lo, hi):
            u = indices[p]
            for q in range(indptr[u], indptr[u + 1]):
                w = indices[q]
                if mark[w] == v:
                    twice += 1
                    if u < w:
                        ru = _find(parent, u)
                        rw = _find(parent, w)
                        if ru != rw:
                            parent[ru] = rw
                            ncomp -= 1
        sizes[v] = twice // 2
        comps[v] = ncomp
    return sizes, comps


@njit
def _reachable_count(indptr, indices, n, skip_a, skip_b, start):
    seen = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int64)
    seen[start] = True
    stack[0] = start
    top = 1
    count = 1
    while top:
        top -= 1
        v = stack[top]
        for p in range(indptr[v], indptr[v + 1]):
            w = indices[p]
            if w != skip_a and w != skip_b and not seen[w]:
                seen[w] = True
                stack[top] = w
                top += 1
                count += 1
    return count


@njit
def _min_articulation(indptr, indices, n, removed):
    """Smallest articulation point of ``G - removed`` (``removed=-1``: none).

    Returns -2 if ``G - removed`` is disconnected, -1 if it has no cut vertex.
    """
    start = 0
    if removed == 0:
        start = 1
    alive = n - 1 if removed >= 0 else n
    if alive <= 2:
        return -1
    disc = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    par = np.full(n, -1, dtype=np.int64)
    it = np.zeros(n, dtype=np.int64)
    is_ap = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int64)
    for v in range(n):
        it[v] = indptr[v]
    timer = 0
    root_children = 0
    disc[start] = timer
    low[start] = timer
    timer += 1
    stack[0] = start
    top = 1
    while top:
        v = stack[top - 1]
        if it[v] < indptr[v + 1]:
            w = indices[it[v]]
            it[v] += 1
            if w == removed or w == par[v]:
                continue
            if disc[w] < 0:
                par[w] = v
                disc[w] = timer
                low[w] = timer
                timer += 1
                stack[top] = w
                top += 1
                if v == start:
                    root_children += 1
            elif disc[w] < low[v]:
                low[v] = disc[w]
        else:
            top -= 1
            u = par[v]
            if u >= 0:
                if low[v] < low[u]:
                    low[u] = low[v]
                if u != start and low[v] >= disc[u]:
                    is_ap[u] = True
    if timer < alive:
        return -2
    if root_children > 1:
        is_ap[start] = True
    for v in range(n):
        if is_ap[v]:
            return v
    return -1


@njit
def small_vertex_cut(indptr, indices, n, k):
    """Lexicographically first vertex cut of size < k (k <= 3).

    Returns ``(size, a, b)``: size -1 when none exists, 0 when the graph is
    disconnected, 1 with a cut vertex ``a``, 2 with a cut pair ``a < b``.
    Callers handle the order < k+1 cases separately.
    """
    if n == 0:
        return -1, -1, -1
    if _reachable_count(indptr, indices, n, -1, -1, 0) < n:
        return 0, -1, -1
    if k < 2:
        return -1, -1, -1
    a = _min_articulation(indptr, indices, n, -1)
    if a >= 0:
        return 1, a, -1
    if k < 3:
        return -1, -1, -1
    for u in range(n):
        b = _min_articulation(indptr, indices, n, u)
        if b >= 0:
            return 2, u, b
    return -1, -1, -1


@njit
def pair_deletion_cut(indptr, indices, n):
    """Brute force: first pair ``a < b`` whose deletion disconnects the graph, else (-1, -1).

    O(n^2 (n + m)); the oracle the articulation-based path is checked against.
    """
    for a in range(n):
        for b in range(a + 1, n):
            if n - 2 < 2:
                continue
            start = 0
            while start == a or start == b:
                start += 1
            if _reachable_count(indptr, indices, n, a, b, start) < n - 2:
                return a, b
    return -1, -1


@njit
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit
def labeled_sweep(n):
    """Size, minimum degree and local-cycle flag of every labeled graph on ``n`` vertices.

    Graph ``mask`` sets edge ``t`` when bit ``t`` is set, with pairs numbered
    in graph6 column order (0,1), (0,2), (1,2), (0,3), ...
    """
    npairs = n * (n - 1) // 2
    total = 1 << npairs
    pu = np.empty(npairs, dtype=np.int64)
    pv = np.empty(npairs, dtype=np.int64)
    t = 0
    for j in range(1, n):
        for i in range(j):
            pu[t] = i
            pv[t] = j
            t += 1
    sizes = np.zeros(total, dtype=np.int64)
    mindeg = np.zeros(total, dtype=np.int64)
    lnf = np.zeros(total, dtype=np.bool_)
    adj = np.zeros(n, dtype=np.int64)
    for mask in range(total):
        for v in range(n):
            adj[v] = 0
        m = 0
        for t in range(npairs):
            if (mask >> t) & 1:
                adj[pu[t]] |= 1 << pv[t]
                adj[pv[t]] |= 1 << pu[t]
                m += 1
        sizes[mask] = m
        dmin = n
        ok = True
        for v in range(n):
            nb = adj[v]
            d = _popcount(nb)
            if d < dmin:
                dmin = d
            if not ok:
                continue
            if d < 3:
                ok = False
                continue
            twice = 0
            for u in range(n):
                if (nb >> u) & 1:
                    twice += _popcount(adj[u] & nb)
            # components of N(v) by bit flooding
            rest = nb
            comps = 0
            while rest:
                comps += 1
                front = rest & -rest
                comp = front
                while front:
                    grow = 0
                    for u in range(n):
                        if (front >> u) & 1:
                            grow |= adj[u]
                    front = grow & nb & ~comp
                    comp |= front
                rest &= ~comp
            if twice // 2 <= d - comps:
                ok = False
        mindeg[mask] = dmin
        lnf[mask] = ok
    return sizes, mindeg, lnf
