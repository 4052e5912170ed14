"""``ceppc`` — batch front end for validation, placement, rewriting and the service.

Exit codes: 0 ok, 2 input error, 3 infeasible, 4 instance too large for the
exact solver. ``ceppc validate`` exits 1 when the graph parses but is not
correct.
"""
from __future__ import annotations

import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional

import click

from .catalog import Catalog, ParseError, load_catalog
from .graph import (
    GraphError,
    InvalidGraph,
    IPCG,
    parse_ipcg,
    process_capacity,
    process_shareable,
    serialize_ipcg,
    validate_ipcg,
)
from .heuristic import EmptyCatalog, ItemTooLarge, SearchConfig, local_search
from .model import (
    ContainerVariant,
    Infeasible,
    PlacementItem,
    ProblemInstance,
    TooLarge,
    export_lp,
    format_eur,
    placement_to_json,
    solve_exact,
    total_cost,
)
from .report import (
    STATUS_ERROR,
    STATUS_INFEASIBLE,
    STATUS_OK,
    STATUS_TIMEOUT,
    BenchRow,
    render_figures,
    write_rows,
)
from .rewrite import decompose, enumerate_proposals
from .rewrite import improve as improve_graph
from .workload import (
    GeneratorSpec,
    NamedGraph,
    Workload,
    WorkloadError,
    flatten,
    generate,
    parse_workload,
)

EXIT_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_TOO_LARGE = 4


def _die(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        _die(EXIT_INPUT, f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        _die(EXIT_INPUT, f"{path} is not valid JSON: {exc}")


def _load_graph_file(path: str) -> IPCG:
    doc = _read_json(path)
    try:
        return parse_ipcg(doc)
    except GraphError as exc:
        _die(EXIT_INPUT, f"{path}: {exc}")


def _load_catalog_file(path: str) -> Catalog:
    try:
        return load_catalog(path)
    except (OSError, ParseError) as exc:
        _die(EXIT_INPUT, f"{path}: {exc}")


def _load_workload_any(path: str) -> Workload:
    """A workload file, or a single graph file wrapped as a one-entry workload."""
    doc = _read_json(path)
    try:
        if isinstance(doc, dict) and "nodes" in doc:
            return Workload((NamedGraph(Path(path).stem, parse_ipcg(doc)),))
        return parse_workload(doc)
    except (GraphError, WorkloadError) as exc:
        _die(EXIT_INPUT, f"{path}: {exc}")


def _report_doc(report) -> dict:
    return {
        "valid": report.is_correct,
        "violations": [
            {"code": v.code, "ref": v.ref, "message": v.message} for v in report.violations
        ],
    }


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main() -> None:
    """Cost-efficient placement of integration processes on container catalogs."""


# -- validate ------------------------------------------------------------------


@main.command()
@click.argument("ipcg_file", type=click.Path())
@click.option("--json", "as_json", is_flag=True, help="machine-readable report")
def validate(ipcg_file: str, as_json: bool) -> None:
    """Check a process graph for structural and contract correctness."""
    g = _load_graph_file(ipcg_file)
    report = validate_ipcg(g)
    if as_json:
        click.echo(json.dumps(_report_doc(report), indent=2, sort_keys=True))
    elif report.is_correct:
        click.echo(f"ok: {ipcg_file}: {len(g.nodes)} patterns, {len(g.edges)} flows, correct")
    else:
        for v in report.violations:
            click.echo(f"{v.code} [{v.ref}]: {v.message}")
        click.echo(f"{len(report.violations)} violation(s)")
    sys.exit(0 if report.is_correct else 1)


# -- solve ---------------------------------------------------------------------


def _used_containers(placement, inst: ProblemInstance):
    members: dict[int, list[PlacementItem]] = {}
    for it in inst.items:
        members.setdefault(placement.item_to_container[it.item_id], []).append(it)
    for j in sorted(range(inst.max_containers)):
        v = inst.variants[placement.container_to_variant[j]]
        group = sorted(members.get(j, ()), key=lambda it: it.item_id)
        if group or not v.is_zero:
            yield j, v, group


@main.command()
@click.argument("workload_file", type=click.Path())
@click.argument("catalog_file", type=click.Path())
@click.option("--exact", "method", flag_value="exact", default=True, help="branch and bound (default)")
@click.option("--heuristic", "method", flag_value="heuristic", help="FFD plus local search")
@click.option("--seed", default=1, show_default=True, help="heuristic RNG seed")
@click.option("--max-transformations", default=10_000, show_default=True)
@click.option("--budget-s", type=float, default=None, help="time budget for --exact")
@click.option("--allow-large", is_flag=True, help="lift the exact solver's item limit")
@click.option("--out", "out_file", type=click.Path(), default=None, help="write placement JSON")
@click.option("--json", "as_json", is_flag=True)
def solve(
    workload_file: str,
    catalog_file: str,
    method: str,
    seed: int,
    max_transformations: int,
    budget_s: Optional[float],
    allow_large: bool,
    out_file: Optional[str],
    as_json: bool,
) -> None:
    """Place a workload onto catalog containers and price it."""
    w = _load_workload_any(workload_file)
    cat = _load_catalog_file(catalog_file)
    try:
        inst = flatten(w, cat)
    except InvalidGraph as exc:
        _die(EXIT_INPUT, f"workload graph invalid: {exc}")
    except ItemTooLarge as exc:
        _die(EXIT_INFEASIBLE, str(exc))

    t0 = time.perf_counter()
    proven = False
    try:
        if method == "exact":
            placement, proven = solve_exact(inst, budget_s=budget_s, allow_large=allow_large)
        else:
            placement, _ = local_search(
                inst, SearchConfig(max_transformations=max_transformations, rng_seed=seed)
            )
    except TooLarge as exc:
        _die(EXIT_TOO_LARGE, f"{exc}; rerun with --heuristic (or --allow-large)")
    except Infeasible as exc:
        _die(EXIT_INFEASIBLE, str(exc))
    except (ItemTooLarge, EmptyCatalog) as exc:
        _die(EXIT_INFEASIBLE, str(exc))
    wall_ms = (time.perf_counter() - t0) * 1000.0
    cost = total_cost(placement, inst)

    meta = {"catalog": cat.source, "method": method}
    if method == "heuristic":
        meta.update({"seed": seed, "max_transformations": max_transformations})
    placement_json = placement_to_json(placement, inst, meta=meta)

    if as_json:
        doc = json.loads(placement_json)
        doc.update(
            {
                "cost_eur_mo": cost / 100.0,
                "proven_optimal": proven,
                "wall_ms": round(wall_ms, 1),
            }
        )
        click.echo(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for j, v, group in _used_containers(placement, inst):
            ids = ", ".join(it.item_id for it in group) or "-"
            load = sum(it.capacity_mb for it in group)
            click.echo(
                f"  #{j}  {v.vendor}/{v.variant_id}  {format_eur(v.cost_cents)} EUR/mo"
                f"  {load:.0f}/{v.capacity_mb:.0f} MB  [{ids}]"
            )
        click.echo(f"Total: {format_eur(cost)} EUR/mo")
        quality = "optimal" if proven else ("heuristic" if method == "heuristic" else "best found, budget exhausted")
        click.echo(f"{quality}; wall {wall_ms:.1f} ms")

    if out_file:
        Path(out_file).write_text(placement_json)
        if not as_json:
            click.echo(f"wrote {out_file}")


# -- cut -----------------------------------------------------------------------


@main.command()
@click.argument("input_file", type=click.Path())
@click.option("--out-dir", type=click.Path(file_okay=False), default=None, help="defaults next to the input")
@click.option("--json", "as_json", is_flag=True)
def cut(input_file: str, out_dir: Optional[str], as_json: bool) -> None:
    """Cut shareability-crossing flows and write one file per piece.

    Accepts a single graph file or a workload file with graph entries; a
    links manifest records which call/receiver pairs belong together.
    """
    doc = _read_json(input_file)
    base = Path(input_file).stem
    graphs: list[tuple[str, IPCG]] = []
    try:
        if isinstance(doc, dict) and "nodes" in doc:
            graphs = [(base, parse_ipcg(doc))]
        elif isinstance(doc, dict) and "items" in doc:
            w = parse_workload(doc)
            graphs = [(e.name, e.graph) for e in w.processes if isinstance(e, NamedGraph)]
            if not graphs:
                _die(EXIT_INPUT, f"{input_file}: workload has no graph entries")
        else:
            _die(EXIT_INPUT, f"{input_file}: neither a graph nor a workload document")
    except (GraphError, WorkloadError) as exc:
        _die(EXIT_INPUT, f"{input_file}: {exc}")

    target = Path(out_dir) if out_dir else Path(input_file).parent
    target.mkdir(parents=True, exist_ok=True)

    pieces: list[dict] = []
    links: list[dict] = []
    files: list[str] = []
    for name, g in graphs:
        report = validate_ipcg(g)
        if not report.is_correct:
            _die(EXIT_INPUT, f"{name}: invalid graph: {', '.join(report.codes())}")
        result = decompose(g)
        by_link: dict[str, dict] = {}
        for gid, piece in zip(result.graph_ids, result.graphs):
            fname = f"{name}.{gid}.json" if len(graphs) > 1 else f"{base}.{gid}.json"
            (target / fname).write_text(serialize_ipcg(piece))
            files.append(fname)
            pieces.append(
                {
                    "graph": name,
                    "id": gid,
                    "file": fname,
                    "tenant": piece.tenant,
                    "shareable": process_shareable(piece),
                    "cap_mb": process_capacity(piece),
                    "patterns": len(piece.nodes),
                }
            )
            for n in piece.nodes:
                if n.remote_link and n.remote_link.startswith("link://"):
                    by_link.setdefault(n.remote_link, {})[
                        "call" if n.type.value == "external-call" else "receiver"
                    ] = {"piece": gid, "node": n.node_id}
        for u, v in result.cut_edges:
            link = f"link://{u}.{v}"
            entry = by_link.get(link, {})
            links.append(
                {
                    "graph": name,
                    "cut_flow": [u, v],
                    "link": link,
                    "call": entry.get("call"),
                    "receiver": entry.get("receiver"),
                }
            )

    manifest = {"source": str(input_file), "pieces": pieces, "links": links}
    manifest_file = target / f"{base}.links.json"
    manifest_file.write_text(json.dumps(manifest, indent=2) + "\n")

    shareable = sum(1 for p in pieces if p["shareable"])
    if as_json:
        click.echo(json.dumps(manifest, indent=2))
    else:
        click.echo(
            f"{len(graphs)} graph(s) -> {len(pieces)} piece(s)"
            f" ({shareable} shareable, {len(pieces) - shareable} non-shareable),"
            f" {len(links)} link(s)"
        )
        for f in files:
            click.echo(f"  {target / f}")
        click.echo(f"  {manifest_file}")


# -- improve -------------------------------------------------------------------


def _standalone_pricer(cat: Catalog, seed: int, max_transformations: int):
    cfg = SearchConfig(max_transformations=max_transformations, rng_seed=seed)

    def pricer(graphs) -> int:
        w = Workload(tuple(NamedGraph(f"g{i}", g) for i, g in enumerate(graphs)))
        inst = flatten(w, cat)
        _, cents = local_search(inst, cfg)
        return cents

    return pricer


@main.command()
@click.argument("ipcg_file", type=click.Path())
@click.argument("catalog_file", type=click.Path())
@click.option("--out", "out_file", type=click.Path(), default=None, help="default <input>.improved.json")
@click.option("--interactive", is_flag=True, help="only list proposals; accept/reject in the web UI")
@click.option("--seed", default=1, show_default=True)
@click.option("--max-transformations", default=10_000, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def improve(
    ipcg_file: str,
    catalog_file: str,
    out_file: Optional[str],
    interactive: bool,
    seed: int,
    max_transformations: int,
    as_json: bool,
) -> None:
    """Apply cost-reducing rewrites to a process graph."""
    g = _load_graph_file(ipcg_file)
    report = validate_ipcg(g)
    if not report.is_correct:
        _die(EXIT_INPUT, f"{ipcg_file}: invalid graph: {', '.join(report.codes())}")
    cat = _load_catalog_file(catalog_file)
    pricer = _standalone_pricer(cat, seed, max_transformations)

    try:
        if interactive:
            proposals = enumerate_proposals([g], pricer)
            if as_json:
                click.echo(json.dumps([p.to_json() for p in proposals], indent=2))
            else:
                if not proposals:
                    click.echo("no proposals")
                for p in proposals:
                    click.echo(
                        f"  {p.proposal_id} {p.rule.value}: {p.description};"
                        f" saves {format_eur(p.savings_cents)} EUR/mo"
                    )
                click.echo(
                    "nothing applied; run `ceppc serve` and accept or reject in the web UI"
                )
            return
        improved, applied = improve_graph(g, pricer)
    except (Infeasible, ItemTooLarge, EmptyCatalog) as exc:
        _die(EXIT_INFEASIBLE, str(exc))

    cost_before = applied[0].cost_before_cents if applied else pricer([g])
    cost_after = applied[-1].cost_after_cents if applied else cost_before
    out_path = Path(out_file) if out_file else Path(ipcg_file).with_suffix(".improved.json")
    out_path.write_text(serialize_ipcg(improved))

    if as_json:
        click.echo(
            json.dumps(
                {
                    "proposals": [p.to_json() for p in applied],
                    "patterns_before": len(g.nodes),
                    "patterns_after": len(improved.nodes),
                    "cost_before_eur": format_eur(cost_before),
                    "cost_after_eur": format_eur(cost_after),
                    "out": str(out_path),
                },
                indent=2,
            )
        )
        return
    if not applied:
        click.echo("no proposals")
    for k, p in enumerate(applied, start=1):
        click.echo(
            f"  {k}. {p.rule.value}: {p.description};"
            f" -{p.nodes_removed} pattern(s),"
            f" {format_eur(p.cost_before_cents)} -> {format_eur(p.cost_after_cents)} EUR/mo"
        )
    click.echo(
        f"patterns {len(g.nodes)} -> {len(improved.nodes)};"
        f" cost {format_eur(cost_before)} -> {format_eur(cost_after)} EUR/mo"
    )
    click.echo(f"wrote {out_path}")


# -- bench ---------------------------------------------------------------------


_DEFAULT_BENCH_LADDER = (
    ("xs", "bench", 1024.0, 1200),
    ("s", "bench", 2048.0, 2000),
    ("m", "bench", 4096.0, 2808),
    ("l", "bench", 8192.0, 5617),
)


def _bench_cell(task: dict) -> BenchRow:
    variants = [ContainerVariant(*v) for v in task["variants"]]
    size = task["size"]
    seed = task["seed"]
    tenants = max(1, min(task["tenants"], size))
    spec = GeneratorSpec(
        tenant_count=tenants,
        processes_per_tenant=math.ceil(size / tenants),
        capacity_distribution=task["capacity"],
        non_shareable_ratio=task["ratio"],
        seed=seed,
    )
    items = generate(spec).processes[:size]
    row = dict(family=task["family"], instance_size=size, seed=seed, method=task["method"])
    try:
        inst = ProblemInstance.build(items, variants)
    except ItemTooLarge:
        return BenchRow(**row, cost_eur_mo=None, wall_ms=0.0, status=STATUS_INFEASIBLE)
    t0 = time.perf_counter()
    try:
        if task["method"] == "exact":
            placement, proven = solve_exact(inst, budget_s=task["budget_s"], allow_large=True)
            status = STATUS_OK if proven else STATUS_TIMEOUT
        else:
            placement, _ = local_search(
                inst,
                SearchConfig(max_transformations=task["max_transformations"], rng_seed=seed),
            )
            status = STATUS_OK
        cost = total_cost(placement, inst) / 100.0
    except (Infeasible, ItemTooLarge, EmptyCatalog):
        return BenchRow(
            **row, cost_eur_mo=None, wall_ms=(time.perf_counter() - t0) * 1000.0, status=STATUS_INFEASIBLE
        )
    except Exception:
        return BenchRow(
            **row, cost_eur_mo=None, wall_ms=(time.perf_counter() - t0) * 1000.0, status=STATUS_ERROR
        )
    return BenchRow(**row, cost_eur_mo=cost, wall_ms=(time.perf_counter() - t0) * 1000.0, status=status)


def _bench_tasks(spec_doc: dict, spec_path: Path, seed_override: Optional[int]) -> list[dict]:
    families = spec_doc.get("families")
    if families is None:
        families = [spec_doc]
    tasks = []
    for fam in families:
        if not isinstance(fam, dict) or not fam.get("sizes"):
            _die(EXIT_INPUT, "each bench family needs a 'sizes' list")
        name = fam.get("name", "random")
        seeds = [seed_override] if seed_override is not None else fam.get("seeds", [1, 2, 3, 4, 5])
        methods = fam.get("methods", ["exact", "heuristic"])
        cap = fam.get("capacity", ["uniform", 512.0, 448.0])
        if cap[0] == "fixed":
            capacity = ("fixed", tuple(float(c) for c in cap[1]))
        else:
            capacity = ("uniform", float(cap[1]), float(cap[2]))
        if fam.get("catalog"):
            cat_path = spec_path.parent / fam["catalog"]
            cat = _load_catalog_file(str(cat_path))
            variants = [
                (v.variant_id, v.vendor, v.capacity_mb, v.cost_cents)
                for v in cat.normalized().variants
                if not v.is_zero
            ]
        else:
            variants = list(_DEFAULT_BENCH_LADDER)
        for size in fam["sizes"]:
            for seed in seeds:
                for method in methods:
                    tasks.append(
                        {
                            "family": name,
                            "size": int(size),
                            "seed": int(seed),
                            "method": method,
                            "variants": variants,
                            "tenants": int(fam.get("tenants", 3)),
                            "ratio": float(fam.get("non_shareable_ratio", 0.3)),
                            "capacity": capacity,
                            "budget_s": float(fam.get("exact_budget_s", 60.0)),
                            "max_transformations": int(fam.get("max_transformations", 10_000)),
                        }
                    )
    return tasks


@main.command()
@click.argument("spec_file", type=click.Path())
@click.option("--out", "out_file", type=click.Path(), default="bench.csv", show_default=True)
@click.option("--jobs", default=1, show_default=True, help="parallel worker processes")
@click.option("--seed", type=int, default=None, help="run a single seed instead of the spec's list")
@click.option("--figures/--no-figures", default=True, show_default=True)
def bench(spec_file: str, out_file: str, jobs: int, seed: Optional[int], figures: bool) -> None:
    """Run instance families with both solvers and emit a CSV (plus figures).

    The spec file lists families: name, sizes, seeds, methods, generator
    parameters, optional catalog path and exact-solver budget. Failures
    (timeout, infeasible, error) become rows; the run continues.
    """
    spec_doc = _read_json(spec_file)
    tasks = _bench_tasks(spec_doc, Path(spec_file), seed)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_bench_cell, tasks))
    else:
        rows = [_bench_cell(t) for t in tasks]
    csv_path = write_rows(rows, Path(out_file))
    click.echo(f"wrote {len(rows)} row(s) to {csv_path}")
    if figures:
        for p in render_figures(rows, csv_path.parent):
            click.echo(f"wrote {p}")
    bad = [r for r in rows if r.status not in (STATUS_OK,)]
    if bad:
        click.echo(f"{len(bad)} row(s) did not finish cleanly ({', '.join(sorted({r.status for r in bad}))})")


# -- export-lp -----------------------------------------------------------------


@main.command("export-lp")
@click.argument("workload_file", type=click.Path())
@click.argument("catalog_file", type=click.Path())
@click.option("--out", "out_file", type=click.Path(), default="model.lp", show_default=True)
def export_lp_cmd(workload_file: str, catalog_file: str, out_file: str) -> None:
    """Write the placement model as a CPLEX-LP file."""
    w = _load_workload_any(workload_file)
    cat = _load_catalog_file(catalog_file)
    try:
        inst = flatten(w, cat)
    except InvalidGraph as exc:
        _die(EXIT_INPUT, f"workload graph invalid: {exc}")
    except ItemTooLarge as exc:
        _die(EXIT_INFEASIBLE, str(exc))
    text = export_lp(inst)
    Path(out_file).write_text(text)
    nvars = sum(1 for line in text.splitlines() if line.startswith((" x_", " y_")))
    ncons = sum(1 for line in text.splitlines() if line.startswith(" c"))
    click.echo(f"wrote {out_file}: {nvars} variables, {ncons} constraints")


# -- serve ---------------------------------------------------------------------


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=None, help="default $CEPP_PORT or 8080")
@click.option("--catalog-dir", type=click.Path(file_okay=False), default=None)
@click.option("--workload-dir", type=click.Path(file_okay=False), default=None)
@click.option("--session-dir", type=click.Path(file_okay=False), default=None)
@click.option("--seed", type=int, default=None, help="default $CEPP_SEED or 1")
def serve(
    host: str,
    port: Optional[int],
    catalog_dir: Optional[str],
    workload_dir: Optional[str],
    session_dir: Optional[str],
    seed: Optional[int],
) -> None:
    """Start the HTTP pricing service."""
    import uvicorn

    from .service import ServiceConfig, create_app

    cfg = ServiceConfig.from_env(
        catalog_dir=catalog_dir, workload_dir=workload_dir, session_dir=session_dir, seed=seed
    )
    app = create_app(cfg)
    if port is None:
        port = int(os.environ.get("CEPP_PORT", "8080"))
    click.echo(f"serving on http://{host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":  # pragma: no cover
    main()
