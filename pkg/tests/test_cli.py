"""Command line interface, driven through click's test runner."""
import json

import pytest
from click.testing import CliRunner

from cepp.cli import main
from cepp.fixtures import data_dir
from cepp.model import PlacementItem
from cepp.workload import GeneratorSpec, Workload, generate, workload_to_json

CATALOGS = data_dir() / "catalogs"
WORKLOADS = data_dir() / "workloads"
GRAPHS = data_dir() / "graphs"


@pytest.fixture()
def runner():
    return CliRunner()


# -- validate ---------------------------------------------------------------


def test_validate_ok(runner):
    r = runner.invoke(main, ["validate", str(GRAPHS / "invoicing.json")])
    assert r.exit_code == 0
    assert "correct" in r.output


def test_validate_reports_violations(runner, tmp_path):
    doc = {
        "tenant": "t1",
        "nodes": [
            {
                "id": "s",
                "name": "start:in",
                "type": "start",
                "char": {"mc": [0, 1], "mg": True},
                "in_contracts": [],
                "out_contracts": [{}],
            },
            {
                "id": "m",
                "name": "filter:f",
                "type": "message-processor",
                "char": {},
                "in_contracts": [{}],
                "out_contracts": [],
            },
        ],
        "edges": [["s", "m"]],
    }
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    r = runner.invoke(main, ["validate", str(bad)])
    assert r.exit_code == 1
    assert "MISSING_END" in r.output
    rj = runner.invoke(main, ["validate", "--json", str(bad)])
    parsed = json.loads(rj.output)
    assert parsed["valid"] is False
    assert any(v["code"] == "MISSING_END" for v in parsed["violations"])


def test_validate_parse_error_exits_2(runner, tmp_path):
    bad = tmp_path / "garbage.json"
    bad.write_text("{nope")
    r = runner.invoke(main, ["validate", str(bad)])
    assert r.exit_code == 2


# -- solve --------------------------------------------------------------------


def test_solve_exact_example(runner, tmp_path):
    out = tmp_path / "placement.json"
    r = runner.invoke(
        main,
        [
            "solve",
            str(WORKLOADS / "example1.workload.json"),
            str(CATALOGS / "example1.catalog.json"),
            "--out",
            str(out),
        ],
    )
    assert r.exit_code == 0, r.output
    assert "Total: 50.00 EUR/mo" in r.output
    assert "optimal" in r.output
    first = out.read_bytes()
    r2 = runner.invoke(
        main,
        [
            "solve",
            str(WORKLOADS / "example1.workload.json"),
            str(CATALOGS / "example1.catalog.json"),
            "--out",
            str(out),
        ],
    )
    assert r2.exit_code == 0
    assert out.read_bytes() == first  # byte-stable across runs


def test_solve_json_output(runner):
    r = runner.invoke(
        main,
        [
            "solve",
            "--json",
            str(WORKLOADS / "example1.workload.json"),
            str(CATALOGS / "example1.catalog.json"),
        ],
    )
    assert r.exit_code == 0
    doc = json.loads(r.output)
    assert doc["total_eur_mo"] == 50.0


def test_solve_heuristic(runner):
    r = runner.invoke(
        main,
        [
            "solve",
            "--heuristic",
            str(WORKLOADS / "example1.workload.json"),
            str(CATALOGS / "example1.catalog.json"),
        ],
    )
    assert r.exit_code == 0
    assert "Total:" in r.output


def big_workload(tmp_path, n):
    w = generate(GeneratorSpec(tenant_count=3, processes_per_tenant=n // 3 + 1, seed=7))
    w = Workload(w.processes[:n])
    p = tmp_path / "big.workload.json"
    p.write_text(workload_to_json(w))
    return p


def test_solve_too_large_exits_4(runner, tmp_path):
    p = big_workload(tmp_path, 21)
    r = runner.invoke(main, ["solve", str(p), str(CATALOGS / "example1.catalog.json")])
    assert r.exit_code == 4
    assert "--heuristic" in r.output


def test_solve_infeasible_exits_3(runner, tmp_path):
    w = Workload((PlacementItem("huge", 999999.0, "t1", True),))
    p = tmp_path / "huge.workload.json"
    p.write_text(workload_to_json(w))
    r = runner.invoke(main, ["solve", str(p), str(CATALOGS / "example1.catalog.json")])
    assert r.exit_code == 3


# -- cut ----------------------------------------------------------------------


def test_cut_single_graph(runner, tmp_path):
    r = runner.invoke(
        main,
        ["cut", str(GRAPHS / "sample_mixed.json"), "--out-dir", str(tmp_path)],
    )
    assert r.exit_code == 0, r.output
    assert "4 piece(s)" in r.output
    assert "3 shareable, 1 non-shareable" in r.output
    pieces = sorted(p.name for p in tmp_path.glob("sample_mixed.g*.json"))
    assert pieces == [f"sample_mixed.g{i}.json" for i in range(4)]
    manifest = json.loads((tmp_path / "sample_mixed.links.json").read_text())
    assert len(manifest["pieces"]) == 4
    for link in manifest["links"]:
        assert link["link"].startswith("link://")
        assert link["call"]["piece"] != link["receiver"]["piece"]


def test_cut_workload_batch(runner, tmp_path):
    r = runner.invoke(
        main,
        ["cut", str(WORKLOADS / "edocuments.workload.json"), "--out-dir", str(tmp_path)],
    )
    assert r.exit_code == 0, r.output
    assert "13 graph(s) -> 19 piece(s)" in r.output


def test_cut_rejects_invalid(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    r = runner.invoke(main, ["cut", str(bad)])
    assert r.exit_code == 2


# -- improve --------------------------------------------------------------------


def test_improve_applies_and_writes(runner, tmp_path):
    out = tmp_path / "improved.json"
    r = runner.invoke(
        main,
        [
            "improve",
            str(GRAPHS / "invoicing.json"),
            str(CATALOGS / "aws_t2.catalog.json"),
            "--out",
            str(out),
        ],
    )
    assert r.exit_code == 0, r.output
    assert "15.94" in r.output and "7.97" in r.output
    doc = json.loads(out.read_text())
    assert len(doc["nodes"]) == 12


def test_improve_interactive_lists_only(runner, tmp_path):
    out = tmp_path / "improved.json"
    r = runner.invoke(
        main,
        [
            "improve",
            "--interactive",
            str(GRAPHS / "invoicing.json"),
            str(CATALOGS / "aws_t2.catalog.json"),
            "--out",
            str(out),
        ],
    )
    assert r.exit_code == 0, r.output
    assert "nothing applied" in r.output
    assert not out.exists()


# -- bench ----------------------------------------------------------------------


def test_bench_writes_csv_and_figures(runner, tmp_path):
    spec = {
        "name": "demo",
        "sizes": [6, 30],
        "seeds": [1],
        "methods": ["exact", "heuristic"],
        "exact_budget_s": 0.2,
        "max_transformations": 300,
    }
    spec_file = tmp_path / "bench.json"
    spec_file.write_text(json.dumps(spec))
    out = tmp_path / "bench.csv"
    r = runner.invoke(main, ["bench", str(spec_file), "--out", str(out)])
    assert r.exit_code == 0, r.output
    lines = out.read_text().splitlines()
    assert lines[0].startswith("family,")
    assert len(lines) == 1 + 4  # 2 sizes x 2 methods x 1 seed
    assert any(",TIMEOUT" in ln for ln in lines[1:])  # 30-item exact at 0.2s
    assert (tmp_path / "cost_vs_size.png").exists()
    assert (tmp_path / "runtime_vs_size.png").exists()


def test_bench_no_figures_flag(runner, tmp_path):
    spec = {"name": "demo", "sizes": [4], "seeds": [2], "methods": ["heuristic"]}
    spec_file = tmp_path / "tiny.json"
    spec_file.write_text(json.dumps(spec))
    out = tmp_path / "tiny.csv"
    r = runner.invoke(main, ["bench", str(spec_file), "--out", str(out), "--no-figures"])
    assert r.exit_code == 0, r.output
    assert out.exists()
    assert not (tmp_path / "cost_vs_size.png").exists()


# -- export-lp --------------------------------------------------------------------


def test_export_lp(runner, tmp_path):
    out = tmp_path / "model.lp"
    r = runner.invoke(
        main,
        [
            "export-lp",
            str(WORKLOADS / "example1.workload.json"),
            str(CATALOGS / "example1.catalog.json"),
            "--out",
            str(out),
        ],
    )
    assert r.exit_code == 0, r.output
    text = out.read_text()
    nvars = sum(1 for ln in text.splitlines() if ln.startswith((" x_", " y_")))
    ncons = sum(1 for ln in text.splitlines() if ln.startswith(" c"))
    assert f"{nvars} variables, {ncons} constraints" in r.output
