"""Benchmark rows and rendered figures."""
from cepp.report import (
    BenchRow,
    STATUS_OK,
    STATUS_TIMEOUT,
    read_rows,
    render_figures,
    write_rows,
)


def rows():
    return [
        BenchRow("demo", 10, 1, "exact", 12.0, 12.5, STATUS_OK),
        BenchRow("demo", 10, 1, "heuristic", 13.0, 1.2, STATUS_OK),
        BenchRow("demo", 20, 1, "exact", 24.0, 60000.0, STATUS_TIMEOUT),
        BenchRow("demo", 20, 1, "heuristic", 25.0, 2.5, STATUS_OK),
    ]


def test_csv_round_trip(tmp_path):
    path = tmp_path / "bench.csv"
    write_rows(rows(), path)
    text = path.read_text()
    assert text.splitlines()[0] == "family,instance_size,seed,method,cost_eur_mo,wall_ms,status"
    assert "demo,10,1,exact,12.00,12.5,ok" in text
    assert read_rows(path) == rows()


def test_timeout_rows_keep_incumbent_cost(tmp_path):
    path = tmp_path / "bench.csv"
    write_rows(rows(), path)
    got = [r for r in read_rows(path) if r.status == STATUS_TIMEOUT]
    assert got and got[0].cost_eur_mo == 24.0


def test_missing_cost_round_trips_as_none(tmp_path):
    path = tmp_path / "bench.csv"
    write_rows([BenchRow("demo", 5, 1, "exact", None, 3.0, "ERROR")], path)
    assert read_rows(path)[0].cost_eur_mo is None


def test_render_figures(tmp_path):
    made = render_figures(rows(), tmp_path)
    names = sorted(p.name for p in made)
    assert names == ["cost_vs_size.png", "runtime_vs_size.png"]
    for p in made:
        assert p.exists() and p.stat().st_size > 1000
