"""Bundled data files stay in lockstep with their builders."""
from cepp.catalog import parse_catalog
from cepp.fixtures import build_all, data_dir
from cepp.graph import parse_ipcg, validate_ipcg
from cepp.workload import parse_workload


def test_shipped_files_match_builders():
    built = build_all()
    root = data_dir()
    assert sorted(built) == sorted(
        str(p.relative_to(root)) for p in root.rglob("*.json")
    )
    for rel, text in built.items():
        assert (root / rel).read_text() == text, f"{rel} drifted from its builder"


def test_shipped_graphs_are_valid():
    root = data_dir()
    for p in (root / "graphs").glob("*.json"):
        g = parse_ipcg(p.read_text())
        assert validate_ipcg(g).is_correct, p.name


def test_shipped_catalogs_parse():
    root = data_dir()
    for p in (root / "catalogs").glob("*.json"):
        cat = parse_catalog(p.read_text())
        assert len(cat.variants) >= 2, p.name


def test_shipped_workloads_parse():
    root = data_dir()
    seen = 0
    for p in (root / "workloads").glob("*.json"):
        parse_workload(p.read_text())
        seen += 1
    assert seen == 4
