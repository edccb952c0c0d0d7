import json

import pytest

from lnfgraph.cli import main
from lnfgraph.formats import emit_edge_list, emit_graph6, parse_graph6
from lnfgraph.graph import complete, cycle, petersen


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    data = json.loads(out)
    assert data["schema_version"] == 1
    return code, data


def test_formula(capsys):
    code, data = run_json(capsys, "formula", 100)
    row = data["rows"][0]
    assert code == 0 and row["f"] == 188 and row["b"] == "231"
    code, data = run_json(capsys, "formula", 8)
    assert data["rows"][0]["f"] == 15 and data["rows"][0]["phi_min"] == 15
    code, data = run_json(capsys, "formula", 8, "--to", 23)
    assert [r["n"] for r in data["rows"]] == list(range(8, 24))
    code, out, _ = run(capsys, "formula", 100)
    assert "188" in out and "231" in out


def test_formula_below_scope(capsys):
    code, _, err = run(capsys, "formula", 7)
    assert code == 2 and "8" in err


def test_construct_dot(capsys):
    code, out, _ = run(capsys, "construct", 12, "--format", "dot")
    assert code == 0
    assert sum(1 for line in out.splitlines() if " -- " in line) == 23


def test_construct_is_deterministic(capsys, tmp_path):
    first = run(capsys, "construct", 8)[1]
    second = run(capsys, "construct", 8)[1]
    assert first == second
    g = parse_graph6(first)
    assert (g.order, g.size) == (8, 15)
    target = tmp_path / "g.txt"
    assert run(capsys, "construct", 9, "--format", "edges", "-o", target)[0] == 0
    assert target.read_text().startswith("# order 9")


def test_construct_1000(capsys):
    code, out, _ = run(capsys, "construct", 1000)
    g = parse_graph6(out)
    assert code == 0 and (g.order, g.size) == (1000, 1875)


def test_construct_bad_store(capsys, tmp_path):
    bad = tmp_path / "store.json"
    bad.write_text('{"schema_version": 1, "gadgets": {"B1": {"graph6": "Dhc", "ports": {}}}}')
    code, _, err = run(capsys, "construct", 9, "--store", bad)
    assert code == 2 and "store" in err


def check(capsys, tmp_path, text):
    path = tmp_path / "in.txt"
    path.write_text(text)
    code, out, _ = run(capsys, "check", path, "--json")
    return code, json.loads(out)


def test_check_k4(capsys, tmp_path):
    code, rep = check(capsys, tmp_path, emit_edge_list(complete(4)))
    assert code == 0 and rep["locally_nonforesty"] and rep["three_connected"]
    assert rep["min_degree"] == rep["max_degree"] == 3


def test_check_petersen(capsys, tmp_path):
    code, rep = check(capsys, tmp_path, emit_graph6(petersen()))
    assert code == 1
    assert rep["locally_foresty"] and not rep["locally_nonforesty"]
    assert rep["forest_witness_vertex"] == 0


def test_check_c5(capsys, tmp_path):
    code, rep = check(capsys, tmp_path, emit_graph6(cycle(5)))
    assert code == 1 and not rep["three_connected"] and len(rep["cut"]) == 2


def test_check_witness_reports_lower_bound(capsys, tmp_path):
    _, out, _ = run(capsys, "construct", 8)
    code, rep = check(capsys, tmp_path, out)
    assert code == 0 and rep["lower_bound"]["bound"] == 15 and rep["lower_bound"]["tight"]


def test_check_parse_error(capsys, tmp_path):
    path = tmp_path / "in.txt"
    path.write_text("C}x\n")
    code, _, err = run(capsys, "check", path)
    assert code == 2 and "byte 2" in err


def test_certify(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", 8, "--output-dir", tmp_path)
    assert code == 0 and "confirmed" in out
    data = json.loads((tmp_path / "certificate_n8_m15.json").read_text())
    assert data["schema_version"] == 1 and data["verdict"] == "confirmed"
    assert data["details"]["constructed_witness"]
    code, _, _ = run(capsys, "certify", 8, "--claimed", 14, "--output-dir", tmp_path)
    assert code == 1
    code, _, err = run(capsys, "certify", 10, "--output-dir", tmp_path)
    assert code == 3 and "refused" in err
    code, _, _ = run(capsys, "certify", 9, "--output-dir", tmp_path)
    assert code == 3


def test_certify_workers_only_change_timing(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("LNFGRAPH_OUTPUT_DIR", str(tmp_path / "a"))
    assert run(capsys, "certify", 8)[0] == 0
    assert run(capsys, "certify", 8, "--workers", 2, "--output-dir", tmp_path / "b")[0] == 0
    a = json.loads((tmp_path / "a" / "certificate_n8_m15.json").read_text())
    b = json.loads((tmp_path / "b" / "certificate_n8_m15.json").read_text())
    a.pop("timing"), b.pop("timing")
    assert a == b


def test_refute(capsys):
    code, data = run_json(capsys, "refute", "--max-n", 10_000)
    assert code == 0 and data["summary"]["all_b_exceeds_f"]
    rows = {r["n"]: r for r in data["rows"]}
    assert rows[100]["gap"] == "43" and rows[8]["gap"] == "4/3"
    assert rows[8]["b"] == "49/3" and rows[8]["f"] == 15
    assert all(r["witness_available"] for r in data["rows"])
    code, out, _ = run(capsys, "refute", "--max-n", 50, "--quiet")
    assert out.count("\n") == 1 and "max gap" in out


def test_gadgets_certify(capsys):
    code, out, _ = run(capsys, "gadgets", "--certify", 4)
    assert code == 0 and "32/32" in out


def test_gadgets_corrupted_store(capsys, tmp_path):
    bad = tmp_path / "store.json"
    bad.write_text("[]")
    code, _, err = run(capsys, "gadgets", "--certify", 4, "--store", bad)
    assert code == 2


def test_gadgets_derive(capsys, tmp_path):
    code, out, _ = run(capsys, "gadgets", "--derive", "--k-max", 2, "--store-out", tmp_path / "s.json")
    assert code == 0
    data = json.loads((tmp_path / "s.json").read_text())
    assert sorted(data["gadgets"]) == ["B1", "C1", "D1", "D2"]
    assert (tmp_path / "s_derivation.json").exists()


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "construct")[0] == 2
    assert run(capsys, "refute", "--max-n", 3)[0] == 2
    assert run(capsys, "formula", 10, "--workers", 0)[0] == 2
