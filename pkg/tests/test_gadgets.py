import json

import networkx as nx
import pytest

from lnfgraph.bounds import f
from lnfgraph.canon import canonical_form
from lnfgraph.constructors import (
    GadgetSpec, StoreError, assemble, build_plan, default_store, load_store, save_store,
    store_from_dict, store_to_dict,
)
from lnfgraph.gadgets import (
    GADGET_IDS, GadgetRequirement, certify_gadget_store, find_gadgets, search_gadgets,
)
from lnfgraph.graph import Graph, complete, cycle

from conftest import to_nx

K5_MINUS_EDGE = Graph.from_edges(5, [(u, v) for v in range(5) for u in range(v) if (u, v) != (0, 1)])


def independent_check(g, n):
    h = to_nx(g)
    return (g.order == n and g.size == f(n) and nx.node_connectivity(h) >= 3
            and all(not nx.is_forest(h.subgraph(h[v])) for v in h))


@pytest.fixture(scope="module")
def searches():
    return {gid: search_gadgets(GadgetRequirement.for_id(gid)) for gid in GADGET_IDS}


def test_requirements():
    shapes = {gid: (r.order, r.size) for gid in GADGET_IDS
              for r in [GadgetRequirement.for_id(gid)]}
    assert shapes == {"B1": (5, 9), "C1": (6, 11), "D1": (7, 13), "D2": (7, 12)}
    assert GadgetRequirement.for_id("D2").residues == (7,)
    assert GadgetRequirement.for_id("B1").residues == (1, 5)


def test_degenerate_a_requirement():
    cands = find_gadgets(GadgetRequirement.for_id("A"))
    assert len(cands) == 1 and cands[0].graph == complete(4)


def test_every_gadget_found(searches):
    for gid, res in searches.items():
        assert res.candidates, gid
        for spec in res.candidates:
            req = res.requirement
            assert (spec.graph.order, spec.graph.size) == (req.order, req.size)
            assert len(set(spec.ports.values())) == 4


def test_b1_candidates_are_k5_minus_edge(searches):
    target = canonical_form(K5_MINUS_EDGE)
    assert {canonical_form(s.graph) for s in searches["B1"].candidates} == {target}


def test_candidates_are_sound(searches):
    for gid, res in searches.items():
        for spec in res.candidates[:3]:
            store = {"A": default_store()["A"], gid: spec}
            for k in res.requirement.k_values:
                for r in res.requirement.residues:
                    n = 8 * k + r
                    assert independent_check(assemble(build_plan(n), store), n)


def test_search_determinism(searches):
    again = search_gadgets(GadgetRequirement.for_id("D2"))
    assert [s.to_dict() for s in again.candidates] == [s.to_dict() for s in searches["D2"].candidates]


def test_default_store_matches_first_candidates(searches):
    store = default_store()
    for gid in GADGET_IDS:
        assert store[gid].to_dict() == searches[gid].candidates[0].to_dict()


def test_certify_default_store():
    cert = certify_gadget_store(default_store(), k_max=4)
    assert cert.verdict == "confirmed" and cert.verify()
    assert cert.counts == {"assembled": 32, "passed": 32}


@pytest.mark.slow
def test_certify_default_store_extended():
    assert certify_gadget_store(default_store(), k_max=25).verdict == "confirmed"


def test_c5_as_b1_fails_requirement():
    store = dict(default_store())
    store["B1"] = GadgetSpec("B1", cycle(5), {"x": 0, "y": 1, "z": 2, "w": 3})
    cert = certify_gadget_store(store)
    assert cert.verdict == "failed" and not cert.verify()
    assert cert.details["failure"]["predicate"] == "requirement"
    assert cert.counts["assembled"] == 0


def test_bad_ports_fail_assembly_check():
    store = dict(default_store())
    spec = store["B1"]
    ports = dict(spec.ports)
    ports["y"], ports["w"] = ports["w"], ports["y"]
    store["B1"] = GadgetSpec("B1", spec.graph, ports)
    cert = certify_gadget_store(store, k_max=1)
    # a wrong port assignment may or may not break; the verdict must match the records
    assert cert.passed == all(r["verdict"] == "pass" for r in cert.records)


def test_store_round_trip(tmp_path):
    store = default_store()
    path = save_store(store, tmp_path / "g.json")
    again = load_store(path)
    assert store_to_dict(again) == store_to_dict(store)


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(schema_version=99),
    lambda d: d["gadgets"]["B1"].update(graph6="D??"),
    lambda d: d["gadgets"]["C1"]["ports"].pop("x"),
    lambda d: d["gadgets"]["D1"]["ports"].update(x=1, y=1),
    lambda d: d["gadgets"]["D2"].update(graph6="!!"),
    lambda d: d.pop("gadgets"),
])
def test_corrupted_store_rejected(mutate):
    data = store_to_dict(default_store())
    mutate(data)
    with pytest.raises(StoreError):
        store_from_dict(json.loads(json.dumps(data)))


def test_unreadable_store(tmp_path):
    with pytest.raises(StoreError):
        load_store(tmp_path / "missing.json")
    (tmp_path / "bad.json").write_text("{not json")
    with pytest.raises(StoreError):
        load_store(tmp_path / "bad.json")
