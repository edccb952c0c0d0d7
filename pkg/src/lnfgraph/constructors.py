"""Ring assemblies of K4 blocks and gadgets realizing the extremal size f(n).

Blocks are numbered 1..m in ring order (stored 0-based). Consecutive blocks
are joined by z_i y_{i+1} with wrap-around, and w/x ports are paired by chord
rules that depend on n mod 8. The first block is replaced by gadget B1, C1, D1
or D2 to hit orders that are not multiples of 4.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .bounds import DomainError, f
from .formats import emit_graph6, parse_graph6
from .graph import Graph, GraphBuilder, complete, join

PORT_NAMES = ("x", "y", "z", "w")
STORE_SCHEMA_VERSION = 1
DEFAULT_VERIFY_DEPTH = 2000

# (order, size) of each block type. Gadget sizes follow from requiring
# e(G_n) = f(n): e.g. n = 8k+1 gives 6(2k-1) + e(B1) + 2k + k = 15k + 3.
GADGET_SHAPES = {
    "A": (4, 6),
    "B1": (5, 9),
    "C1": (6, 11),
    "D1": (7, 13),
    "D2": (7, 12),
}

# residue -> (first block, uses 2k+1 blocks)
_RESIDUE_RULES = {
    0: ("A", False), 1: ("B1", False), 2: ("C1", False), 3: ("D1", False),
    4: ("A", True), 5: ("B1", True), 6: ("C1", True), 7: ("D2", True),
}

RESIDUES_USING = {gid: tuple(r for r, (b, _) in _RESIDUE_RULES.items() if b == gid)
                  for gid in GADGET_SHAPES}


class ConstructionError(RuntimeError):
    """Assembly failed or the assembled graph did not verify."""

    def __init__(self, message: str, predicate: str | None = None, detail=None):
        super().__init__(message)
        self.predicate = predicate
        self.detail = detail


class StoreError(ValueError):
    """Missing, malformed or invalid gadget store."""


@dataclass(frozen=True)
class GadgetSpec:
    id: str
    graph: Graph
    ports: dict  # port name -> vertex

    def to_dict(self) -> dict:
        return {"graph6": emit_graph6(self.graph), "ports": dict(self.ports),
                "order": self.graph.order, "size": self.graph.size}


def gadget_problem(spec: GadgetSpec) -> str | None:
    if spec.id not in GADGET_SHAPES:
        return f"unknown gadget id {spec.id!r}"
    order, size = GADGET_SHAPES[spec.id]
    if (spec.graph.order, spec.graph.size) != (order, size):
        return (f"expected order {order} and size {size}, "
                f"got order {spec.graph.order} and size {spec.graph.size}")
    if set(spec.ports) != set(PORT_NAMES):
        return f"ports must be exactly {PORT_NAMES}, got {sorted(spec.ports)}"
    verts = list(spec.ports.values())
    if len(set(verts)) != len(verts):
        return "ports must be distinct vertices"
    if any(not isinstance(v, int) or not 0 <= v < order for v in verts):
        return "port vertex out of range"
    return None


def standard_block() -> GadgetSpec:
    return GadgetSpec("A", complete(4), {"x": 0, "y": 1, "z": 2, "w": 3})


@dataclass(frozen=True)
class ConstructionPlan:
    n: int
    r: int
    k: int
    blocks: tuple  # gadget ids in ring order
    ring: tuple    # ((block, "z"), (block, "y")) pairs, blocks 0-based
    chords: tuple  # ((block, port), (block, port)) pairs

    def size_from_shapes(self) -> int:
        """Size implied by block shapes plus connecting edges, without assembling."""
        return (sum(GADGET_SHAPES[b][1] for b in self.blocks)
                + len(self.ring) + len(self.chords))

    def order_from_shapes(self) -> int:
        return sum(GADGET_SHAPES[b][0] for b in self.blocks)


def build_plan(n: int) -> ConstructionPlan:
    if n < 8:
        raise DomainError(f"witness graphs exist for n >= 8, got n={n}")
    k, r = divmod(n, 8)
    first, odd = _RESIDUE_RULES[r]
    m = 2 * k + 1 if odd else 2 * k
    blocks = (first,) + ("A",) * (m - 1)
    ring = tuple(((i, "z"), ((i + 1) % m, "y")) for i in range(m))

    def w(i):  # 1-based block index to 0-based w port
        return (i - 1, "w")

    if not odd:
        chords = [(w(j), w(k + j)) for j in range(1, k + 1)]
    elif r == 7:
        chords = [(w(1), w(k + 1)), ((0, "x"), w(k + 2))]
        chords += [(w(j), w(k + j + 1)) for j in range(2, k + 1)]
    else:
        chords = [(w(1), w(k + 1))] + [(w(j), w(k + j + 1)) for j in range(1, k + 1)]
    return ConstructionPlan(n, r, k, blocks, ring, tuple(chords))


def assemble(plan: ConstructionPlan, gadgets: dict) -> Graph:
    """Disjoint union of the plan's blocks plus ring and chord edges.

    Block b occupies a contiguous index range in ring order, keeping the
    gadget's internal numbering.
    """
    offsets = []
    total = 0
    for gid in plan.blocks:
        spec = gadgets.get(gid)
        if spec is None:
            raise ConstructionError(f"gadget {gid} missing from store")
        problem = gadget_problem(spec)
        if problem:
            raise ConstructionError(f"gadget {gid}: {problem}")
        offsets.append(total)
        total += spec.graph.order
    builder = GraphBuilder(total)
    for b, gid in enumerate(plan.blocks):
        off = offsets[b]
        builder.add_edges((off + u, off + v) for u, v in gadgets[gid].graph.edges())

    def port(ref):
        b, name = ref
        return offsets[b] + gadgets[plan.blocks[b]].ports[name]

    seen = set()
    for a, c in plan.ring + plan.chords:
        u, v = port(a), port(c)
        key = (min(u, v), max(u, v))
        if u == v or key in seen:
            raise ConstructionError(f"port collision joining {a} and {c}")
        seen.add(key)
        builder.add_edge(u, v)
    g = builder.freeze()
    if g.size != plan.size_from_shapes():
        raise ConstructionError("a connecting edge duplicates a block edge")
    return g


def case1_graph(n: int) -> Graph:
    """K3 joined with n-3 independent vertices (size 3n - 6)."""
    if n < 4:
        raise DomainError(f"case-1 graph needs n >= 4, got n={n}")
    return join(complete(3), Graph.empty(n - 3))


# -- gadget store --------------------------------------------------------------


def store_from_dict(data: dict) -> dict:
    if not isinstance(data, dict):
        raise StoreError("gadget store must be a JSON object")
    if data.get("schema_version") != STORE_SCHEMA_VERSION:
        raise StoreError(f"unsupported store schema {data.get('schema_version')!r}")
    store = {"A": standard_block()}
    try:
        for gid, entry in data["gadgets"].items():
            graph = parse_graph6(entry["graph6"])
            ports = {name: int(v) for name, v in entry["ports"].items()}
            spec = GadgetSpec(gid, graph, ports)
            problem = gadget_problem(spec)
            if problem:
                raise StoreError(f"gadget {gid}: {problem}")
            store[gid] = spec
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        if isinstance(exc, StoreError):
            raise
        raise StoreError(f"malformed gadget store: {exc}") from None
    return store


def store_to_dict(store: dict, extra: dict | None = None) -> dict:
    gadgets = {gid: store[gid].to_dict() for gid in sorted(store) if gid != "A"}
    return {"schema_version": STORE_SCHEMA_VERSION, "gadgets": gadgets, **(extra or {})}


def load_store(path=None) -> dict:
    if path is None:
        text = resources.files("lnfgraph.data").joinpath("gadgets.json").read_text(encoding="utf-8")
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise StoreError(f"cannot read gadget store {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StoreError(f"gadget store is not JSON: {exc}") from None
    return store_from_dict(data)


def save_store(store: dict, path, extra: dict | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(store_to_dict(store, extra), indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")
    return path


_DEFAULT_STORE = None


def default_store() -> dict:
    global _DEFAULT_STORE
    if _DEFAULT_STORE is None:
        _DEFAULT_STORE = load_store()
    return _DEFAULT_STORE


# -- verified witnesses ----------------------------------------------------------


def verify_witness(g: Graph, n: int, verify_depth: int = DEFAULT_VERIFY_DEPTH) -> None:
    """Raise ConstructionError unless g has order n, size f(n), is locally
    nonforesty and (for n <= verify_depth) 3-connected."""
    from .predicates import is_k_connected, is_locally_nonforesty

    if g.order != n:
        raise ConstructionError(f"order {g.order} != {n}", "order", g.order)
    if g.size != f(n):
        raise ConstructionError(f"size {g.size} != f({n}) = {f(n)}", "size", g.size)
    ok, bad = is_locally_nonforesty(g)
    if not ok:
        raise ConstructionError(f"local subgraph of vertex {bad} is a forest",
                                "locally_nonforesty", bad)
    if n <= verify_depth:
        ok, cut = is_k_connected(g, 3)
        if not ok:
            raise ConstructionError(f"not 3-connected, cut {sorted(cut) if cut else cut}",
                                    "3_connected", cut)


def witness(n: int, store: dict | None = None, verify_depth: int = DEFAULT_VERIFY_DEPTH) -> Graph:
    """A verified 3-connected locally nonforesty graph of order n and size f(n)."""
    plan = build_plan(n)
    store = default_store() if store is None else store
    if not store or any(gid not in store for gid in plan.blocks):
        raise StoreError(f"gadget store lacks {sorted(set(plan.blocks) - set(store or {}))}")
    g = assemble(plan, store)
    verify_witness(g, n, verify_depth)
    return g


def block_labels(plan: ConstructionPlan, store: dict) -> list[str]:
    """Human-readable vertex names (``x3``, ``B1.4``...) for DOT output."""
    labels = []
    for b, gid in enumerate(plan.blocks):
        spec = store[gid]
        names = {v: p for p, v in spec.ports.items()}
        for v in range(spec.graph.order):
            labels.append(f"{names[v]}{b + 1}" if v in names else f"{gid}.{v}")
    return labels
