"""Workloads: the processes/items to place, region scoping, and generators.

A workload file is JSON:

    {
      "region": "eu-central",
      "items": [
        {"id": "p1", "cap_mb": 832, "tenant": "t1", "shareable": true},
        {"id": "p2", "ipcg": { ...process graph document... }},
        ...
      ]
    }

Entries are either pre-flattened placement items or full process graphs
(``ipcg`` key, optional ``id``); graphs are sized and classified when the
workload is flattened into a problem instance. Region assignment of tenants
lives in a separate map file (``{"t1": "eu-central", ...}``) because regions
group tenants, not individual processes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .catalog import Catalog
from .graph import (
    Contract,
    GraphBuilder,
    IPCG,
    InvalidGraph,
    PatternCharacteristics,
    PatternType,
    ipcg_to_dict,
    parse_ipcg,
    process_capacity,
    process_shareable,
    validate_ipcg,
)
from .model import PlacementItem, ProblemInstance
from .rng import SplitMix64

@dataclass(frozen=True)
class NamedGraph:
    """A process graph entry with the id it carries in its workload file."""

    name: str
    graph: IPCG

    @property
    def tenant(self) -> str:
        return self.graph.tenant


Entry = Union[NamedGraph, PlacementItem]


class WorkloadError(ValueError):
    pass


class UnassignedTenant(WorkloadError):
    pass


@dataclass(frozen=True)
class Workload:
    processes: tuple[Entry, ...]
    region: Optional[str] = None

    @property
    def tenants(self) -> frozenset[str]:
        return frozenset(e.tenant for e in self.processes)

    def __len__(self) -> int:
        return len(self.processes)


def parse_workload(doc: str | bytes | dict) -> Workload:
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise WorkloadError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("items"), list):
        raise WorkloadError("workload document needs an 'items' list")
    region = doc.get("region")
    if region is not None and not isinstance(region, str):
        raise WorkloadError("'region' must be a string or null")
    entries: list[Entry] = []
    for k, raw in enumerate(doc["items"]):
        if not isinstance(raw, dict):
            raise WorkloadError(f"items[{k}] must be an object")
        if "ipcg" in raw:
            g = parse_ipcg(raw["ipcg"])
            entries.append(NamedGraph(str(raw.get("id", f"g{k}")), g))
        else:
            try:
                entries.append(PlacementItem.from_json(raw))
            except (KeyError, TypeError, ValueError) as exc:
                raise WorkloadError(f"items[{k}]: {exc}") from exc
    return Workload(tuple(entries), region)


def load_workload(path: str | Path) -> Workload:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise WorkloadError(f"cannot read workload {p}: {exc}") from exc
    return parse_workload(text)


def load_workload_dir(path: str | Path) -> list[Workload]:
    return [load_workload(p) for p in sorted(Path(path).glob("*.json"))]


def workload_to_json(w: Workload) -> str:
    items = []
    for e in w.processes:
        if isinstance(e, PlacementItem):
            doc = e.to_json()
            if e.origin:
                doc["origin"] = e.origin
            items.append(doc)
        else:
            items.append({"id": e.name, "ipcg": ipcg_to_dict(e.graph)})
    return json.dumps({"region": w.region, "items": items}, indent=2) + "\n"


def load_region_map(path: str | Path) -> dict[str, str]:
    doc = json.loads(Path(path).read_text())
    if not isinstance(doc, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in doc.items()
    ):
        raise WorkloadError("region map must be a flat {tenant: region} object")
    return doc


def partition_by_region(w: Workload, assignment: dict[str, str]) -> dict[str, Workload]:
    """Split a workload along a total tenant → region assignment.

    The sub-workloads are disjoint and jointly cover the input; placement can
    then be solved per region independently.
    """
    missing = sorted(w.tenants - set(assignment))
    if missing:
        raise UnassignedTenant(f"tenants without a region: {', '.join(missing)}")
    buckets: dict[str, list[Entry]] = {}
    for e in w.processes:
        buckets.setdefault(assignment[e.tenant], []).append(e)
    return {region: Workload(tuple(entries), region) for region, entries in sorted(buckets.items())}


def flatten(w: Workload, catalog: Catalog) -> ProblemInstance:
    """The placement instance for a workload against a catalog.

    Graph entries become one item each, sized by total pattern capacity and
    shareable only when every pattern is; item entries pass through. The
    catalog is normalized on the way in.
    """
    items: list[PlacementItem] = []
    for e in w.processes:
        if isinstance(e, PlacementItem):
            items.append(e)
            continue
        report = validate_ipcg(e.graph)
        if not report.is_correct:
            raise InvalidGraph(report)
        items.append(
            PlacementItem(
                item_id=e.name,
                capacity_mb=process_capacity(e.graph),
                tenant=e.tenant,
                shareable=process_shareable(e.graph),
                origin=e.name,
            )
        )
    return ProblemInstance.build(items, catalog.normalized().variants)


# -- synthetic workloads ---------------------------------------------------


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for deterministic synthetic workloads.

    ``processes_per_tenant`` is either a fixed count or an inclusive
    ``(low, high)`` range drawn per tenant. ``capacity_distribution`` is
    either ``("uniform", mean_mb, spread)`` — capacities uniform in
    [mean−spread, mean+spread], whole MB, at least 64 — or
    ``("fixed", (c1, c2, ...))`` cycling through the given MB values.
    """

    tenant_count: int = 3
    processes_per_tenant: Union[int, tuple[int, int]] = 5
    capacity_distribution: tuple = ("uniform", 512.0, 448.0)
    non_shareable_ratio: float = 0.3
    seed: int = 1

    def __post_init__(self):
        if not 0.0 <= self.non_shareable_ratio <= 1.0:
            raise ValueError("non_shareable_ratio must be within [0, 1]")
        kind = self.capacity_distribution[0]
        if kind not in ("uniform", "fixed"):
            raise ValueError(f"unknown capacity distribution {kind!r}")


def generate(spec: GeneratorSpec, region: Optional[str] = None) -> Workload:
    rng = SplitMix64(spec.seed)
    kind = spec.capacity_distribution[0]
    fixed_caps = tuple(spec.capacity_distribution[1]) if kind == "fixed" else ()
    items = []
    k = 0
    for t in range(1, spec.tenant_count + 1):
        if isinstance(spec.processes_per_tenant, int):
            count = spec.processes_per_tenant
        else:
            lo, hi = spec.processes_per_tenant
            count = rng.randint(lo, hi)
        for _ in range(count):
            if kind == "fixed":
                cap = float(fixed_caps[k % len(fixed_caps)])
            else:
                _, mean, spread = spec.capacity_distribution
                cap = max(64.0, float(round(rng.uniform(mean - spread, mean + spread))))
            shareable = rng.uniform(0.0, 1.0) >= spec.non_shareable_ratio
            items.append(
                PlacementItem(
                    item_id=f"t{t}-p{k}",
                    capacity_mb=cap,
                    tenant=f"t{t}",
                    shareable=shareable,
                )
            )
            k += 1
    return Workload(tuple(items), region)


# -- synthetic process graphs ------------------------------------------------


@dataclass(frozen=True)
class GraphSpec:
    """Shape parameters for random, always-valid process graphs.

    The generator tracks exactly what each pattern produces and constrains
    every consumer to precisely that, so generated graphs pass full
    validation and stay rewritable: repeated enricher/translator kinds form
    combinable runs, router sections are routing-slip sites, and shareability
    flips create decomposition cuts.
    """

    n_segments: int = 8
    run_bias: float = 0.5
    flip_shareable: float = 0.15
    router_chance: float = 0.2
    write_chance: float = 0.6
    delete_chance: float = 0.15
    pin_chance: float = 0.1


_PROCESSOR_KINDS = ("content-enricher", "content-enricher", "message-translator", "store", "filter")


class _Flow:
    """Running record of the message contents along the generated chain."""

    def __init__(self):
        self.hdr: set[str] = set()
        self.pl: set[str] = {"d0"}
        self.signed = "any"

    def contract(self) -> Contract:
        concepts = {"signed": self.signed} if self.signed != "any" else None
        return Contract.make(concepts, hdr=set(self.hdr), pl=set(self.pl))


def generate_graph(tenant: str, spec: GraphSpec, seed: int) -> IPCG:
    rng = SplitMix64(seed)
    b = GraphBuilder(tenant)
    flow = _Flow()
    shareable = True
    counter = 0

    def next_id() -> str:
        nonlocal counter
        nid = f"n{counter:02d}"
        counter += 1
        return nid

    start = next_id()
    b.add_node(
        start,
        "start:source",
        PatternType.START,
        PatternCharacteristics(message_cardinality=(0, 1), message_generating=True, shareable=shareable),
    )
    tail = start
    tail_out = flow.contract()

    prev_kind = None
    for seg in range(spec.n_segments):
        if rng.uniform(0.0, 1.0) < spec.flip_shareable:
            shareable = not shareable
        if rng.uniform(0.0, 1.0) < spec.router_chance:
            # router section: condition -> two same-system calls -> join
            router = next_id()
            b.add_node(
                router,
                f"content-based-router:route {seg}",
                PatternType.CONDITION,
                PatternCharacteristics(
                    access="ro",
                    conditions=(f"branch{seg}=='a'", f"branch{seg}=='b'"),
                    shareable=shareable,
                ),
            )
            b.add_edge(tail, router, out_contract=tail_out, in_contract=flow.contract())
            call_in = flow.contract()
            flow.pl.add(f"rcpt{seg}")
            call_out = flow.contract()
            join = next_id()
            call_ids = []
            for leg in ("a", "b"):
                call = next_id()
                call_ids.append(call)
                b.add_node(
                    call,
                    f"request-reply:endpoint {seg}{leg}",
                    PatternType.EXTERNAL_CALL,
                    PatternCharacteristics(shareable=shareable),
                    remote_link=f"svc://backend-{seg}/{leg}",
                )
                b.add_edge(router, call, out_contract=tail_out, in_contract=call_in)
            b.add_node(
                join,
                f"structural-join:collect {seg}",
                PatternType.STRUCTURAL_JOIN,
                PatternCharacteristics(access="ro", shareable=shareable),
            )
            for call in call_ids:
                b.add_edge(call, join, out_contract=call_out, in_contract=call_out)
            tail = join
            tail_out = call_out
            prev_kind = None
            continue
        if prev_kind in ("content-enricher", "message-translator") and rng.uniform(0.0, 1.0) < spec.run_bias:
            kind = prev_kind
        else:
            kind = _PROCESSOR_KINDS[rng.randrange(len(_PROCESSOR_KINDS))]
        node = next_id()
        node_in = flow.contract()
        if rng.uniform(0.0, 1.0) < spec.write_chance:
            flow.hdr.add(f"x{seg}")
        if len(flow.pl) > 1 and rng.uniform(0.0, 1.0) < spec.delete_chance:
            flow.pl.discard(sorted(flow.pl)[-1])
        if flow.signed == "any" and rng.uniform(0.0, 1.0) < spec.pin_chance:
            flow.signed = "yes"
        b.add_node(
            node,
            f"{kind}:step {seg}",
            PatternType.MESSAGE_PROCESSOR,
            PatternCharacteristics(
                access="rw",
                program=f"step{seg}()",
                shareable=shareable,
            ),
        )
        b.add_edge(tail, node, out_contract=tail_out, in_contract=node_in)
        tail = node
        tail_out = flow.contract()
        prev_kind = kind

    end = next_id()
    b.add_node(
        end,
        "end:sink",
        PatternType.END,
        PatternCharacteristics(access="ro", shareable=shareable),
    )
    b.add_edge(tail, end, out_contract=tail_out, in_contract=flow.contract())
    return b.freeze()


def generate_graphs(
    tenants: Sequence[str], per_tenant: int, spec: GraphSpec, seed: int
) -> list[tuple[str, IPCG]]:
    """(name, graph) pairs: ``per_tenant`` random processes per tenant."""
    out = []
    k = 0
    for tenant in tenants:
        for _ in range(per_tenant):
            k += 1
            out.append((f"p{k}", generate_graph(tenant, spec, seed + k)))
    return out
