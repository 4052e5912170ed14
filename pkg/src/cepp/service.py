"""HTTP pricing service: validate, price, propose, apply — per-session.

A session holds the bundle of graphs the client is modeling (one graph until
a decompose proposal splits it). Pricing is marginal: the session's items are
added to its region's background workload, both totals come from the
deterministic heuristic under the service seed, and the difference — floored
at the standalone cheapest-fitting-variant cost — is the session's cost.

Stale-apply protection: every proposal id is prefixed with the graph revision
it was enumerated against (``r3-p0``); applying against a newer revision is
rejected with 409 before anything is touched.
"""
from __future__ import annotations

import itertools
import json
import os
import threading
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .catalog import Catalog, load_catalog_dir
from .graph import (
    GraphError,
    IPCG,
    ipcg_to_dict,
    parse_ipcg,
    process_capacity,
    process_shareable,
    validate_ipcg,
)
from .heuristic import EmptyCatalog, ItemTooLarge, SearchConfig, local_search
from .model import Infeasible, PlacementItem, ProblemInstance, cheapest_fit_index, format_eur
from .rewrite import (
    Proposal,
    RewriteResult,
    RuleId,
    apply_match,
    decompose,
    enumerate_proposals,
    verify_rewrite,
)
from .workload import NamedGraph, Workload, load_workload_dir


def _default_data(sub: str) -> Path:
    return Path(__file__).resolve().parent / "data" / sub


@dataclass(frozen=True)
class ServiceConfig:
    catalog_dir: Path
    workload_dir: Optional[Path]
    seed: int = 1
    max_transformations: int = 10_000
    session_dir: Optional[Path] = None

    @staticmethod
    def from_env(
        catalog_dir: Optional[str] = None,
        workload_dir: Optional[str] = None,
        session_dir: Optional[str] = None,
        seed: Optional[int] = None,
    ) -> "ServiceConfig":
        cat = catalog_dir or os.environ.get("CEPP_CATALOG_DIR") or _default_data("catalogs")
        wl = workload_dir or os.environ.get("CEPP_WORKLOAD_DIR")
        if wl is None and Path(_default_data("workloads")).is_dir() and not workload_dir:
            wl = _default_data("workloads")
        sd = session_dir or os.environ.get("CEPP_SESSION_DIR")
        return ServiceConfig(
            catalog_dir=Path(cat),
            workload_dir=Path(wl) if wl else None,
            seed=seed if seed is not None else int(os.environ.get("CEPP_SEED", "1")),
            session_dir=Path(sd) if sd else None,
        )


@dataclass
class Session:
    session_id: str
    catalog_id: str
    region: Optional[str]
    graphs: list[IPCG]
    valid: bool
    revision: int = 0
    cost_cents: Optional[int] = None
    history: list[dict] = field(default_factory=list)
    # proposal cache for the current revision: id -> (proposal, rewrite result)
    proposals: Optional[dict[str, tuple[Proposal, RewriteResult]]] = None
    order: list[str] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


def _graph_items(graphs: Sequence[IPCG], prefix: str) -> list[PlacementItem]:
    return [
        PlacementItem(
            item_id=f"{prefix}g{k}",
            capacity_mb=process_capacity(g),
            tenant=g.tenant,
            shareable=process_shareable(g),
            origin=f"{prefix}g{k}",
        )
        for k, g in enumerate(graphs)
    ]


def _bundle_report(graphs: Sequence[IPCG]) -> dict:
    violations = []
    for k, g in enumerate(graphs):
        for v in validate_ipcg(g).violations:
            entry = {"code": v.code, "ref": v.ref, "message": v.message}
            if len(graphs) > 1:
                entry["graph"] = k
            violations.append(entry)
    return {"valid": not violations, "violations": violations}


def create_app(config: Optional[ServiceConfig] = None) -> FastAPI:
    cfg = config or ServiceConfig.from_env()
    catalogs: dict[str, Catalog] = load_catalog_dir(cfg.catalog_dir)
    region_items: dict[str, tuple[PlacementItem, ...]] = {}
    if cfg.workload_dir and Path(cfg.workload_dir).is_dir():
        for w in load_workload_dir(cfg.workload_dir):
            if w.region is None:
                continue
            items = list(region_items.get(w.region, ()))
            for e in w.processes:
                if isinstance(e, PlacementItem):
                    items.append(e)
                else:
                    items.append(
                        PlacementItem(
                            item_id=e.name,
                            capacity_mb=process_capacity(e.graph),
                            tenant=e.tenant,
                            shareable=process_shareable(e.graph),
                            origin=e.name,
                        )
                    )
            region_items[w.region] = tuple(items)

    sessions: dict[str, Session] = {}
    ids = itertools.count(1)
    create_lock = threading.Lock()
    search_cfg = SearchConfig(max_transformations=cfg.max_transformations, rng_seed=cfg.seed)

    def heuristic_total(items: Sequence[PlacementItem], catalog: Catalog) -> int:
        if not items:
            return 0
        inst = ProblemInstance.build(items, catalog.normalized().variants)
        _, cents = local_search(inst, search_cfg)
        return cents

    def standalone_floor(graphs: Sequence[IPCG], catalog: Catalog) -> int:
        variants = catalog.normalized().variants
        cents = 0
        for g in graphs:
            n = cheapest_fit_index(variants, process_capacity(g))
            if n is None:
                raise Infeasible(f"process of {process_capacity(g)} MB fits no variant")
            cents += variants[n].cost_cents
        return cents

    def price_bundle(graphs: Sequence[IPCG], catalog_id: str, region: Optional[str]) -> int:
        catalog = catalogs[catalog_id]
        background = region_items.get(region, ()) if region else ()
        bundle = _graph_items(graphs, "session:")
        with_total = heuristic_total(list(background) + bundle, catalog)
        base_total = heuristic_total(list(background), catalog)
        return max(with_total - base_total, standalone_floor(graphs, catalog))

    def persist(s: Session) -> None:
        if not cfg.session_dir:
            return
        cfg.session_dir.mkdir(parents=True, exist_ok=True)
        doc = {
            "session_id": s.session_id,
            "catalog_id": s.catalog_id,
            "region": s.region,
            "revision": s.revision,
            "cost_eur": None if s.cost_cents is None else format_eur(s.cost_cents),
            "graphs": [ipcg_to_dict(g) for g in s.graphs],
            "history": s.history,
        }
        (cfg.session_dir / f"{s.session_id}.json").write_text(json.dumps(doc, indent=2) + "\n")

    def err(status: int, detail: str) -> JSONResponse:
        return JSONResponse(status_code=status, content={"detail": detail})

    def ensure_proposals(s: Session) -> None:
        """Fill the proposal cache for the current revision."""
        if s.proposals is not None:
            return

        def pricer(graphs: Sequence[IPCG]) -> int:
            return price_bundle(graphs, s.catalog_id, s.region)

        cache: dict[str, tuple[Proposal, RewriteResult]] = {}
        order: list[str] = []
        for p in enumerate_proposals(s.graphs, pricer):
            pid = f"r{s.revision}-{p.proposal_id}"
            g = s.graphs[p.graph_index]
            result = decompose(g) if p.rule is RuleId.DECOMPOSE else apply_match(g, p.match)
            cache[pid] = (replace(p, proposal_id=pid), result)
            order.append(pid)
        s.proposals = cache
        s.order = order

    def graph_payload(s: Session) -> dict:
        doc: dict = {"graphs": [ipcg_to_dict(g) for g in s.graphs]}
        if len(s.graphs) == 1:
            doc["graph"] = doc["graphs"][0]
        return doc

    app = FastAPI(title="cepp cost service", docs_url=None, redoc_url=None)
    # browser clients are served from their own origin
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"])

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "catalogs": len(catalogs), "sessions": len(sessions)}

    @app.get("/catalogs")
    def list_catalogs():
        return sorted(catalogs)

    @app.get("/regions")
    def list_regions():
        return sorted(region_items)

    @app.post("/sessions")
    async def create_session(request: Request):
        try:
            body = await request.json()
        except Exception:
            return err(400, "body is not valid JSON")
        if not isinstance(body, dict) or "ipcg" not in body:
            return err(400, "body needs an 'ipcg' document")
        catalog_id = body.get("catalog_id")
        if not isinstance(catalog_id, str):
            return err(400, "body needs a 'catalog_id'")
        if catalog_id not in catalogs:
            return err(404, f"unknown catalog {catalog_id!r}")
        region = body.get("region")
        if region is not None:
            if not isinstance(region, str):
                return err(400, "'region' must be a string")
            if region not in region_items:
                return err(404, f"unknown region {region!r}")
        try:
            g = parse_ipcg(body["ipcg"])
        except GraphError as exc:
            return err(400, f"cannot parse graph: {exc}")

        report = _bundle_report([g])
        with create_lock:
            sid = f"s{next(ids):04d}"
            s = Session(
                session_id=sid,
                catalog_id=catalog_id,
                region=region,
                graphs=[g],
                valid=report["valid"],
            )
            sessions[sid] = s
        if not report["valid"]:
            persist(s)
            return JSONResponse(
                status_code=422,
                content={"session_id": sid, "validation": report},
            )
        with s.lock:
            try:
                s.cost_cents = price_bundle(s.graphs, catalog_id, region)
            except (Infeasible, ItemTooLarge, EmptyCatalog) as exc:
                persist(s)
                return err(409, f"graph cannot be priced against this catalog: {exc}")
            s.history.append(
                {"kind": "created", "revision": s.revision, "cost_eur": format_eur(s.cost_cents)}
            )
            persist(s)
        return {
            "session_id": sid,
            "validation": report,
            "cost": s.cost_cents / 100.0,
            "cost_eur": format_eur(s.cost_cents),
            "revision": s.revision,
        }

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        s = sessions.get(sid)
        if s is None:
            return err(404, f"unknown session {sid!r}")
        with s.lock:
            doc = {
                "session_id": s.session_id,
                "catalog_id": s.catalog_id,
                "region": s.region,
                "revision": s.revision,
                "validation": _bundle_report(s.graphs),
                "history": s.history,
            }
            if s.cost_cents is not None:
                doc["cost"] = s.cost_cents / 100.0
                doc["cost_eur"] = format_eur(s.cost_cents)
            doc.update(graph_payload(s))
            return doc

    @app.get("/sessions/{sid}/proposals")
    def list_proposals(sid: str):
        s = sessions.get(sid)
        if s is None:
            return err(404, f"unknown session {sid!r}")
        with s.lock:
            if not s.valid:
                return err(422, "session graph is invalid; fix it before asking for proposals")
            try:
                ensure_proposals(s)
            except (Infeasible, ItemTooLarge, EmptyCatalog) as exc:
                return err(409, f"cannot price proposals: {exc}")
            return [s.proposals[pid][0].to_json() for pid in s.order]

    @app.get("/sessions/{sid}/proposals/{pid}/preview")
    def preview_proposal(sid: str, pid: str):
        s = sessions.get(sid)
        if s is None:
            return err(404, f"unknown session {sid!r}")
        with s.lock:
            if not pid.startswith(f"r{s.revision}-"):
                return err(409, f"StaleProposal: {pid} was enumerated against an older revision")
            ensure_proposals(s)
            entry = s.proposals.get(pid)
            if entry is None:
                return err(404, f"unknown proposal {pid!r}")
            p, result = entry
            before = s.graphs[p.graph_index]
            before_ids = {n.node_id for n in before.nodes}
            after_ids = {n.node_id for piece in result.graphs for n in piece.nodes}
            return {
                "proposal": p.to_json(),
                "graph_index": p.graph_index,
                "graphs": [ipcg_to_dict(g) for g in result.graphs],
                "graph_ids": list(result.graph_ids),
                "removed_node_ids": sorted(before_ids - after_ids),
                "added_node_ids": sorted(after_ids - before_ids),
            }

    @app.post("/sessions/{sid}/apply")
    async def apply(sid: str, request: Request):
        s = sessions.get(sid)
        if s is None:
            return err(404, f"unknown session {sid!r}")
        try:
            body = await request.json()
        except Exception:
            return err(400, "body is not valid JSON")
        pid = body.get("proposal_id") if isinstance(body, dict) else None
        if not isinstance(pid, str):
            return err(400, "body needs a 'proposal_id'")
        with s.lock:
            if not s.valid:
                return err(422, "session graph is invalid")
            if not pid.startswith(f"r{s.revision}-"):
                return err(409, f"StaleProposal: {pid} was enumerated against an older revision")
            ensure_proposals(s)
            entry = s.proposals.get(pid)
            if entry is None:
                return err(404, f"unknown proposal {pid!r}")
            p, result = entry
            before = s.graphs[p.graph_index]
            problems = verify_rewrite(before, result)
            if problems:
                return err(500, "rewrite verification failed: " + "; ".join(problems))
            s.graphs = (
                s.graphs[: p.graph_index] + list(result.graphs) + s.graphs[p.graph_index + 1 :]
            )
            s.revision += 1
            s.proposals = None
            s.order = []
            s.cost_cents = p.cost_after_cents
            s.history.append(
                {
                    "kind": "apply",
                    "revision": s.revision,
                    "proposal": p.to_json(),
                    "cost_eur": format_eur(s.cost_cents),
                }
            )
            persist(s)
            report = _bundle_report(s.graphs)
            doc = {
                "new_cost": s.cost_cents / 100.0,
                "new_cost_eur": format_eur(s.cost_cents),
                "validation": report,
                "revision": s.revision,
            }
            doc.update(graph_payload(s))
            return doc

    @app.post("/sessions/{sid}/graph")
    async def replace_graph(sid: str, request: Request):
        s = sessions.get(sid)
        if s is None:
            return err(404, f"unknown session {sid!r}")
        try:
            body = await request.json()
        except Exception:
            return err(400, "body is not valid JSON")
        if not isinstance(body, dict) or "ipcg" not in body:
            return err(400, "body needs an 'ipcg' document")
        try:
            g = parse_ipcg(body["ipcg"])
        except GraphError as exc:
            return err(400, f"cannot parse graph: {exc}")
        report = _bundle_report([g])
        with s.lock:
            if not report["valid"]:
                # previous graph stays in place
                return JSONResponse(status_code=422, content={"validation": report})
            try:
                cost = price_bundle([g], s.catalog_id, s.region)
            except (Infeasible, ItemTooLarge, EmptyCatalog) as exc:
                return err(409, f"graph cannot be priced against this catalog: {exc}")
            s.graphs = [g]
            s.valid = True
            s.revision += 1
            s.proposals = None
            s.order = []
            s.cost_cents = cost
            s.history.append(
                {"kind": "edit", "revision": s.revision, "cost_eur": format_eur(cost)}
            )
            persist(s)
            return {
                "validation": report,
                "cost": cost / 100.0,
                "cost_eur": format_eur(cost),
                "revision": s.revision,
            }

    return app
