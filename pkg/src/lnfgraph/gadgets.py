"""Search for the small gadgets B1, C1, D1, D2 used in the ring assemblies.

Only their (order, size) pairs are forced; the graphs and port roles are
found here. For each non-isomorphic graph of the required shape, every port
assignment (x, y, z, w) up to the graph's automorphisms is tried, and kept if
the assembled witness verifies for every residue using the gadget and every k
in the validation range.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from itertools import permutations

from .bounds import f
from .canon import canonical_labeling, group_elements
from .certificate import Certificate
from .constructors import (
    GADGET_SHAPES, PORT_NAMES, RESIDUES_USING, ConstructionError, GadgetSpec,
    assemble, build_plan, gadget_problem, standard_block, verify_witness,
)
from .enumeration import SearchConstraints, enumerate_graphs
from .formats import emit_graph6

log = logging.getLogger(__name__)

GADGET_IDS = ("B1", "C1", "D1", "D2")
DEFAULT_K_VALUES = (1, 2, 3, 4)


class NoGadgetFound(RuntimeError):
    """No graph of the forced shape supports a valid assembly."""


@dataclass(frozen=True)
class GadgetRequirement:
    id: str
    order: int
    size: int
    ports: tuple = PORT_NAMES
    k_values: tuple = DEFAULT_K_VALUES

    @classmethod
    def for_id(cls, gid: str, k_values=DEFAULT_K_VALUES) -> GadgetRequirement:
        order, size = GADGET_SHAPES[gid]
        return cls(gid, order, size, PORT_NAMES, tuple(k_values))

    @property
    def residues(self) -> tuple:
        return RESIDUES_USING[self.id]


@dataclass
class GadgetSearch:
    requirement: GadgetRequirement
    candidates: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    elapsed: float = 0.0


def _ports_used(req: GadgetRequirement) -> tuple:
    """Port names of block 1 that some plan actually connects."""
    used = set()
    for r in req.residues:
        for k in req.k_values:
            plan = build_plan(8 * k + r)
            for a, c in plan.ring + plan.chords:
                for b, name in (a, c):
                    if b == 0:
                        used.add(name)
    return tuple(p for p in PORT_NAMES if p in used)


def _assembly_failure(spec: GadgetSpec, req: GadgetRequirement) -> str | None:
    store = {"A": standard_block(), spec.id: spec}
    # small k first: nearly all rejections happen there
    for k in sorted(req.k_values):
        for r in req.residues:
            n = 8 * k + r
            try:
                verify_witness(assemble(build_plan(n), store), n, verify_depth=n)
            except ConstructionError as exc:
                return f"n={n}: {exc.predicate or exc}"
    return None


def search_gadgets(req: GadgetRequirement) -> GadgetSearch:
    start = time.perf_counter()
    result = GadgetSearch(req)
    counts = {"base_graphs": 0, "port_labelings": 0, "assemblies_checked": 0, "valid": 0}
    used = _ports_used(req)
    found = []
    for base in enumerate_graphs(SearchConstraints.exact(req.order, req.size)):
        counts["base_graphs"] += 1
        lab = canonical_labeling(base)
        group = group_elements(base.order, lab.generators)
        key6 = emit_graph6(base)
        verdicts: dict = {}
        for tup in permutations(range(base.order), len(PORT_NAMES)):
            if min(tuple(g[v] for v in tup) for g in group) != tup:
                continue
            counts["port_labelings"] += 1
            ports = dict(zip(PORT_NAMES, tup))
            key = tuple(ports[p] for p in used)
            if key not in verdicts:
                counts["assemblies_checked"] += 1
                verdicts[key] = _assembly_failure(GadgetSpec(req.id, base, ports), req)
            if verdicts[key] is None:
                found.append((key6, tup, GadgetSpec(req.id, base, ports)))
    found.sort(key=lambda t: (t[0], t[1]))
    result.candidates = [spec for _, _, spec in found]
    counts["valid"] = len(result.candidates)
    counts["valid_base_graphs"] = len({t[0] for t in found})
    result.counts = counts
    result.elapsed = time.perf_counter() - start
    return result


def find_gadgets(req: GadgetRequirement) -> list:
    """All valid gadgets for ``req`` in canonical order; raises NoGadgetFound if none."""
    res = search_gadgets(req)
    if not res.candidates:
        raise NoGadgetFound(
            f"no graph of order {req.order} and size {req.size} works as gadget {req.id} "
            f"for residues {req.residues} and k in {req.k_values}")
    return res.candidates


def derive_store(k_values=DEFAULT_K_VALUES) -> tuple[dict, dict]:
    """Run every gadget search; keep the canonically first candidate of each.

    Returns the store and a derivation log (requirements, counts, archived
    alternatives, timing).
    """
    store = {"A": standard_block()}
    entries = {}
    for gid in GADGET_IDS:
        req = GadgetRequirement.for_id(gid, k_values)
        res = search_gadgets(req)
        if not res.candidates:
            raise NoGadgetFound(f"gadget {gid}: empty candidate set")
        store[gid] = res.candidates[0]
        log.info("%s: %d valid of %d labelings over %d base graphs", gid,
                 res.counts["valid"], res.counts["port_labelings"], res.counts["base_graphs"])
        entries[gid] = {
            "requirement": {"order": req.order, "size": req.size, "residues": list(req.residues),
                            "k_values": list(req.k_values), "ports": list(req.ports)},
            "counts": res.counts,
            "chosen": res.candidates[0].to_dict(),
            "alternatives": [c.to_dict() for c in res.candidates[1:]],
            "elapsed_seconds": round(res.elapsed, 3),
        }
    return store, {"schema_version": 1, "gadgets": entries}


def certify_gadget_store(store: dict, k_max: int = 4) -> Certificate:
    """Assemble and verify every residue class for k = 1..k_max."""
    start = time.perf_counter()
    records = []
    failure = None
    for gid in ("A",) + GADGET_IDS:
        spec = store.get(gid)
        problem = "missing" if spec is None else gadget_problem(spec)
        if problem:
            failure = {"gadget": gid, "predicate": "requirement", "detail": problem}
            records.append({"gadget": gid, "verdict": "fail", "predicate": "requirement",
                            "detail": problem})
    if failure is None:
        for k in range(1, k_max + 1):
            for r in range(8):
                n = 8 * k + r
                rec = {"n": n, "k": k, "r": r, "expected_size": f(n)}
                try:
                    g = assemble(build_plan(n), store)
                    rec["size"] = g.size
                    verify_witness(g, n, verify_depth=n)
                    rec["verdict"] = "pass"
                except ConstructionError as exc:
                    rec.update(verdict="fail", predicate=exc.predicate or "assembly",
                               detail=str(exc))
                    if failure is None:
                        failure = {"n": n, "predicate": rec["predicate"], "detail": str(exc)}
                records.append(rec)
    return Certificate(
        kind="gadget-store",
        constraints={"k_max": k_max, "residues": list(range(8)),
                     "gadgets": {gid: store[gid].to_dict() for gid in sorted(store)
                                 if gadget_problem(store[gid]) is None}},
        verdict="failed" if failure else "confirmed",
        counts={"assembled": sum(1 for r in records if "n" in r),
                "passed": sum(1 for r in records if r["verdict"] == "pass")},
        records=records,
        details={"failure": failure},
        timing={"elapsed_seconds": round(time.perf_counter() - start, 3)},
    )
