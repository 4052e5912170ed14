"""Benchmark result tables and figures.

A benchmark run produces one :class:`BenchRow` per (family, size, seed,
method) cell. Rows are written as CSV; the same rows also feed two
matplotlib figures (cost and runtime over instance size) saved next to the
CSV so a run leaves a self-contained report directory behind.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

CSV_COLUMNS = ("family", "instance_size", "seed", "method", "cost_eur_mo", "wall_ms", "status")

STATUS_OK = "ok"
STATUS_TIMEOUT = "TIMEOUT"
STATUS_INFEASIBLE = "INFEASIBLE"
STATUS_ERROR = "ERROR"


@dataclass(frozen=True)
class BenchRow:
    family: str
    instance_size: int
    seed: int
    method: str  # "exact" | "heuristic"
    cost_eur_mo: Optional[float]
    wall_ms: float
    status: str = STATUS_OK

    def as_csv(self) -> tuple:
        cost = "" if self.cost_eur_mo is None else f"{self.cost_eur_mo:.2f}"
        return (
            self.family,
            self.instance_size,
            self.seed,
            self.method,
            cost,
            f"{self.wall_ms:.1f}",
            self.status,
        )


def write_rows(rows: Iterable[BenchRow], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for row in rows:
            w.writerow(row.as_csv())
    return path


def read_rows(path: Path) -> list[BenchRow]:
    out = []
    with Path(path).open(newline="") as fh:
        for rec in csv.DictReader(fh):
            cost = rec["cost_eur_mo"]
            out.append(
                BenchRow(
                    family=rec["family"],
                    instance_size=int(rec["instance_size"]),
                    seed=int(rec["seed"]),
                    method=rec["method"],
                    cost_eur_mo=float(cost) if cost else None,
                    wall_ms=float(rec["wall_ms"]),
                    status=rec["status"],
                )
            )
    return out


def _series(rows: Sequence[BenchRow], value):
    """(family, method) → sorted [(size, mean value)] over rows with a value."""
    acc: dict[tuple[str, str], dict[int, list[float]]] = {}
    for r in rows:
        v = value(r)
        if v is None:
            continue
        acc.setdefault((r.family, r.method), {}).setdefault(r.instance_size, []).append(v)
    out = {}
    for key, per_size in acc.items():
        out[key] = sorted((size, sum(vs) / len(vs)) for size, vs in per_size.items())
    return out


_STYLE = {"exact": "o-", "heuristic": "s--"}


def _plot(series, ylabel: str, title: str, path: Path, logy: bool = False) -> Optional[Path]:
    if not series:
        return None
    families = {fam for fam, _ in series}
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for (fam, method), points in sorted(series.items()):
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        label = method if len(families) == 1 else f"{fam}/{method}"
        ax.plot(xs, ys, _STYLE.get(method, "^-"), label=label)
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel("instance size (items)")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_figures(rows: Sequence[BenchRow], out_dir: Path) -> list[Path]:
    """Write cost-vs-size and runtime-vs-size figures; returns written paths.

    Cost uses only rows that produced a cost; runtime uses every finished
    row (timeouts show up at their budget, which is the honest number).
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    cost = _series(rows, lambda r: r.cost_eur_mo)
    p = _plot(cost, "cost (EUR/mo)", "placement cost by method", out_dir / "cost_vs_size.png")
    if p:
        written.append(p)
    runtime = _series(rows, lambda r: r.wall_ms if r.status in (STATUS_OK, STATUS_TIMEOUT) else None)
    p = _plot(
        runtime,
        "wall time (ms)",
        "solver runtime by method",
        out_dir / "runtime_vs_size.png",
        logy=True,
    )
    if p:
        written.append(p)
    return written
