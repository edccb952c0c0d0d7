"""Exhaustive generation of small graphs, one per isomorphism class or fully labeled.

Canonical augmentation adds one vertex at a time. A parent ``P`` is extended
by one neighbourhood ``X`` per orbit of Aut(P) on vertex subsets, and the
child is kept only when the new vertex lies in the automorphism orbit of the
child's canonical deletion vertex (the maximum-degree vertex with the largest
canonical label). Each isomorphism class is then produced exactly once,
without a global seen-set, so parents can be split across worker processes.
"""
from __future__ import annotations

import json
import logging
import math
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np

from . import kernels
from .canon import canonical_labeling, orbits_of_subsets
from .certificate import PREDICATES, Certificate, failing_predicate
from .formats import emit_graph6, parse_graph6
from .graph import Graph, popcount

log = logging.getLogger(__name__)

LABELED_MAX_ORDER = 6
CERTIFY_ORDER = 8
LONG_RUN_ORDER = 9


class EnvelopeError(RuntimeError):
    """The requested exhaustive search is outside the supported cost envelope."""


@dataclass(frozen=True)
class SearchConstraints:
    order: int
    min_size: int = 0
    max_size: int | None = None
    min_degree: int = 0
    predicates: tuple = ()
    mode: str = "canonical"  # or "labeled"

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        top = self.order * (self.order - 1) // 2
        if self.max_size is None:
            object.__setattr__(self, "max_size", top)
        if not 0 <= self.min_size <= self.max_size <= top:
            raise ValueError(f"size range [{self.min_size}, {self.max_size}] outside [0, {top}]")
        object.__setattr__(self, "predicates", tuple(self.predicates))
        for p in self.predicates:
            if p not in PREDICATES:
                raise ValueError(f"unknown predicate {p!r}")
        if self.mode not in ("canonical", "labeled"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "labeled" and self.order > LABELED_MAX_ORDER:
            raise ValueError(f"labeled mode is limited to order <= {LABELED_MAX_ORDER}")

    @classmethod
    def exact(cls, order: int, size: int, **kw) -> SearchConstraints:
        return cls(order, min_size=size, max_size=size, **kw)

    def infeasibility(self) -> str | None:
        if self.min_degree > self.order - 1:
            return f"min_degree {self.min_degree} exceeds order - 1"
        if self.min_degree * self.order > 2 * self.max_size:
            return (f"min_degree*order = {self.min_degree * self.order} exceeds "
                    f"2*max_size = {2 * self.max_size}")
        return None

    def to_dict(self) -> dict:
        return asdict(self) | {"predicates": list(self.predicates)}


def _hereditary_ok(adj, size, target, c: SearchConstraints) -> bool:
    """Can some supergraph on ``target`` vertices containing this induced subgraph meet ``c``?

    Every edge leaving the current vertex set covers at most two units of
    missing degree, so 2*(extra edges) >= deficit + min_degree*(remaining).
    """
    j = len(adj)
    rem = target - j
    if size + (target * (target - 1) - j * (j - 1)) // 2 < c.min_size:
        return False
    if c.min_degree:
        deficit = 0
        for row in adj:
            d = popcount(row)
            if d < c.min_degree:
                if d + rem < c.min_degree:
                    return False
                deficit += c.min_degree - d
        need = -(-(deficit + c.min_degree * rem) // 2)
    else:
        need = 0
    return size + need <= c.max_size


def _extend(parent: Graph, target: int, c: SearchConstraints, counts: Counter) -> list[Graph]:
    j = parent.order
    gens = canonical_labeling(parent).generators
    reps = orbits_of_subsets(j, gens)
    new_bit = 1 << j
    out = []
    for x in range(1 << j):
        if reps[x] != x:
            continue
        counts["candidates"] += 1
        adj = [row | new_bit if x >> v & 1 else row for v, row in enumerate(parent.adj)]
        adj.append(x)
        size = parent.size + popcount(x)
        if not _hereditary_ok(adj, size, target, c):
            counts["pruned_bounds"] += 1
            continue
        degs = [popcount(r) for r in adj]
        top = max(degs)
        if degs[j] != top:
            counts["rejected_degree"] += 1
            continue
        child = Graph(j + 1, tuple(adj), _check=False)
        counts["canonical_tests"] += 1
        lab = canonical_labeling(child)
        deletion = max((v for v in range(j + 1) if degs[v] == top), key=lambda v: lab.labels[v])
        if lab.orbits[deletion] != lab.orbits[j]:
            counts["rejected_canonical"] += 1
            continue
        counts["accepted"] += 1
        out.append(lab.graph)
    return out


def _extend_chunk(args):
    parents, target, c = args
    counts = Counter()
    children = []
    for p in parents:
        children.extend(_extend(p, target, c, counts))
    return children, counts


class Enumeration:
    """Iterable result of ``enumerate_graphs``; ``counts`` fills in as it runs."""

    def __init__(self, constraints: SearchConstraints, workers: int = 1,
                 checkpoint: str | Path | None = None):
        self.constraints = constraints
        self.workers = max(1, int(workers))
        self.checkpoint = Path(checkpoint) if checkpoint else None
        self.counts: Counter = Counter()
        self.level_counts: dict = {}
        self.infeasible = constraints.infeasibility()

    def __iter__(self) -> Iterator[Graph]:
        if self.infeasible:
            log.info("empty enumeration: %s", self.infeasible)
            return iter(())
        if self.constraints.mode == "labeled":
            return self._labeled()
        return self._canonical()

    def _accept_final(self, g: Graph) -> bool:
        c = self.constraints
        if not c.min_size <= g.size <= c.max_size:
            return False
        if c.min_degree and min(g.degrees()) < c.min_degree:
            return False
        self.counts["generated"] += 1
        bad = failing_predicate(g, c.predicates)
        if bad is not None:
            self.counts[f"failed_{bad}"] += 1
            return False
        self.counts["survivors"] += 1
        return True

    def _labeled(self) -> Iterator[Graph]:
        n = self.constraints.order
        pairs = [(i, j) for j in range(1, n) for i in range(j)]
        for mask in range(1 << len(pairs)):
            adj = [0] * n
            for t, (i, j) in enumerate(pairs):
                if mask >> t & 1:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
            self.counts["labeled_graphs"] += 1
            g = Graph(n, tuple(adj), _check=False)
            if self._accept_final(g):
                yield g

    def _load_checkpoint(self):
        if not self.checkpoint or not self.checkpoint.exists():
            return None
        data = json.loads(self.checkpoint.read_text(encoding="utf-8"))
        if data.get("constraints") != self.constraints.to_dict():
            raise ValueError(f"checkpoint {self.checkpoint} belongs to a different search")
        log.info("resuming from checkpoint at order %d", data["level"])
        self.level_counts = data.get("level_counts", {})
        return data["level"], [parse_graph6(s) for s in data["frontier"]]

    def _save_checkpoint(self, level, frontier):
        if not self.checkpoint:
            return
        data = {
            "schema_version": 1,
            "constraints": self.constraints.to_dict(),
            "level": level,
            "level_counts": self.level_counts,
            "frontier": [emit_graph6(g) for g in frontier],
        }
        tmp = self.checkpoint.with_suffix(self.checkpoint.suffix + ".tmp")
        tmp.parent.mkdir(parents=True, exist_ok=True)
        tmp.write_text(json.dumps(data) + "\n", encoding="utf-8")
        tmp.replace(self.checkpoint)

    def _canonical(self) -> Iterator[Graph]:
        c = self.constraints
        target = c.order
        resumed = self._load_checkpoint()
        if resumed:
            level, frontier = resumed
        else:
            level, frontier = 1, [Graph(1, (0,), _check=False)]
            if not _hereditary_ok(list(frontier[0].adj), 0, target, c):
                frontier = []
        pool = None
        if self.workers > 1:
            import multiprocessing

            pool = multiprocessing.get_context("fork").Pool(self.workers)
        try:
            while level < target:
                if pool is not None:
                    chunks = [frontier[i::self.workers] for i in range(self.workers)]
                    results = pool.map(_extend_chunk, [(ch, target, c) for ch in chunks])
                else:
                    results = [_extend_chunk((frontier, target, c))]
                children = []
                step = Counter()
                for ch, cnt in results:
                    children.extend(ch)
                    step.update(cnt)
                children.sort(key=lambda g: (g.size, g.adj))
                level += 1
                self.level_counts[str(level)] = dict(sorted(step.items())) | {"classes": len(children)}
                log.debug("order %d: %d classes", level, len(children))
                frontier = children
                self._save_checkpoint(level, frontier)
        finally:
            if pool is not None:
                pool.close()
                pool.join()
        self.counts["classes_at_order"] = len(frontier)
        for g in frontier:
            if self._accept_final(g):
                yield g


def enumerate_graphs(c: SearchConstraints, workers: int = 1, checkpoint=None) -> Enumeration:
    return Enumeration(c, workers=workers, checkpoint=checkpoint)


def count_classes(order: int) -> int:
    """Number of isomorphism classes of graphs on ``order`` vertices."""
    return sum(1 for _ in enumerate_graphs(SearchConstraints(order)))


def min_size_locally_nonforesty(n: int) -> tuple[int, Graph]:
    """Smallest size of a locally nonforesty graph of order n in {5, 6}, by labeled sweep."""
    if n not in (5, 6):
        raise ValueError("the labeled sweep is scoped to orders 5 and 6")
    sizes, _, lnf = kernels.labeled_sweep(n)
    ok = np.flatnonzero(lnf)
    best = int(sizes[ok].min())
    mask = int(ok[sizes[ok] == best][0])
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    witness = Graph.from_edges(n, [p for t, p in enumerate(pairs) if mask >> t & 1])
    return best, witness


def estimated_cost(n: int) -> str:
    classes = {8: 12346, 9: 274668, 10: 12005168, 11: 1018997864}
    approx = classes.get(n, math.comb(n, 2) ** 2 * 10 ** (n - 5))
    return f"~{approx:,} isomorphism classes at order {n} before degree pruning"


def certify_minimum(n: int, claimed: int,
                    predicates=("3_connected", "locally_nonforesty"),
                    min_degree: int = 3, long_run: bool = False, workers: int = 1,
                    checkpoint=None) -> Certificate:
    """Exhaustively show no graph of order n and size < claimed satisfies the
    predicates, and that one of size ``claimed`` does.

    Any graph with 3-connectivity has min degree >= 3; below 2n edges that
    forces min degree exactly 3, which the certificate records as a check.
    """
    if n > LONG_RUN_ORDER or (n == LONG_RUN_ORDER and not long_run):
        hint = "" if n > LONG_RUN_ORDER else " (pass long_run=True)"
        raise EnvelopeError(f"order {n} is outside the certification envelope{hint}: {estimated_cost(n)}")
    start = time.perf_counter()
    c = SearchConstraints(n, min_size=0, max_size=claimed, min_degree=min_degree)
    en = enumerate_graphs(c, workers=workers, checkpoint=checkpoint)
    by_size: dict[int, Counter] = {}
    first_at: dict[int, str] = {}
    for g in en:
        stats = by_size.setdefault(g.size, Counter())
        stats["generated"] += 1
        if min(g.degrees()) >= 4:
            stats["min_degree_ge_4"] += 1
        bad = failing_predicate(g, predicates)
        if bad is None:
            stats["survivors"] += 1
            first_at.setdefault(g.size, emit_graph6(g))
        else:
            stats[f"failed_{bad}"] += 1
    records = []
    below = []
    for m in range(claimed + 1):
        stats = by_size.get(m, Counter())
        verdict = "exists" if m in first_at else "none"
        records.append({"size": m, "verdict": verdict, "witness": first_at.get(m),
                        **{k: stats[k] for k in sorted(stats)}})
        if m < claimed and verdict == "exists":
            below.append(m)
    degree4_below_2n = sum(by_size.get(m, Counter())["min_degree_ge_4"] for m in range(min(claimed + 1, 2 * n)))
    if below:
        verdict, witness = "failed", None
        reason = f"graph satisfying the predicates exists at size {below[0]} < {claimed}"
    elif claimed not in first_at:
        verdict, witness = "failed", None
        reason = f"no graph satisfying the predicates at size {claimed}"
    else:
        verdict, witness, reason = "confirmed", first_at[claimed], None
    counts = {
        "classes_examined": sum(st["generated"] for st in by_size.values()),
        "classes_satisfying": sum(st["survivors"] for st in by_size.values()),
        "min_degree_ge_4_below_2n": degree4_below_2n,
    }
    cert = Certificate(
        kind="minimality",
        constraints={"order": n, "claimed": claimed, "min_degree": min_degree,
                     "predicates": list(predicates), "mode": "canonical"},
        verdict=verdict,
        witness=witness,
        counts=counts,
        records=records,
        details={"levels": en.level_counts, "reason": reason},
        timing={"elapsed_seconds": round(time.perf_counter() - start, 3)},
    )
    return cert

