"""Bundled example data: catalogs, workloads, and process graphs.

Everything here is generated programmatically so the shipped JSON files under
``cepp/data/`` can be rebuilt byte-identically with

    python -m cepp.fixtures

The placement examples are sized so their optima are forced by the variant
arithmetic (one pattern = 64 MB throughout):

* ``example1``: five processes (13/19/50/11/21 patterns) of three tenants,
  two of them non-shareable, against a 3200 MB/20 EUR + 6400 MB/30 EUR
  catalog — optimum 50.00 EUR/mo, naive per-tenant hosting 70.00 EUR/mo.
* ``invoicing``: a 17-pattern e-invoicing process whose enricher runs and
  test/prod router collapse under the rewrite rules to 12 patterns, moving
  it from the 2048 MB to the 1024 MB variant of the ``aws_t2`` catalog
  (15.94 → 7.97 EUR/mo).
* ``edocuments``: thirteen processes, six of them with a non-shareable tail;
  cutting yields 19 pieces whose optimal placement needs exactly four
  4096 MB containers (112.32 EUR/mo) of the ``edocs`` catalog.
* ``vendors_raw``: 111 synthetic offerings that normalize down to a
  14-variant frontier.
"""
from __future__ import annotations

import json
from pathlib import Path

from .catalog import Catalog
from .graph import (
    Contract,
    GraphBuilder,
    IPCG,
    PatternCharacteristics,
    PatternType,
    serialize_ipcg,
)
from .model import ContainerVariant, PlacementItem
from .rng import SplitMix64
from .workload import NamedGraph, Workload, workload_to_json

UNIT_MB = 64.0


def data_dir() -> Path:
    return Path(__file__).resolve().parent / "data"


# -- catalogs ------------------------------------------------------------------


def example1_catalog() -> Catalog:
    return Catalog(
        "example1",
        (
            ContainerVariant("m-small", "generic", 3200.0, 2000, 1.0),
            ContainerVariant("m-large", "generic", 6400.0, 3000, 1.0),
        ),
    ).normalized()


def aws_t2_catalog() -> Catalog:
    return Catalog(
        "aws_t2",
        (
            ContainerVariant("t2.micro", "aws", 1024.0, 797, 1.0),
            ContainerVariant("t2.small", "aws", 2048.0, 1594, 1.0),
        ),
    ).normalized()


def edocs_catalog() -> Catalog:
    return Catalog(
        "edocs",
        (
            ContainerVariant("xs", "generic", 1024.0, 1200, 1.0),
            ContainerVariant("s", "generic", 2048.0, 2000, 1.0),
            ContainerVariant("m", "generic", 4096.0, 2808, 2.0),
            ContainerVariant("l", "generic", 8192.0, 5617, 4.0),
        ),
    ).normalized()


def vendors_raw_catalog() -> Catalog:
    """111 offerings, 96 of them dominated plus one exact duplicate.

    The surviving frontier is 14 variants with strictly increasing capacity
    and cost but strictly decreasing cost per MB.
    """
    rng = SplitMix64(61)
    frontier = []
    for k in range(14):
        cap = 256.0 * (k + 1)
        per_mb = 0.02 - 0.0006 * k
        cost = round(cap * per_mb * 100)
        frontier.append(ContainerVariant(f"plan-{int(cap):05d}", "vendor-a", cap, cost))
    extras = []
    for i in range(96):
        base = frontier[rng.randrange(len(frontier))]
        cap = base.capacity_mb - rng.randint(8, min(192, int(base.capacity_mb) - 8))
        cost = base.cost_cents + rng.randint(1, 400)
        extras.append(ContainerVariant(f"promo-{i:03d}", "vendor-b", float(cap), cost))
    twin_of = frontier[5]
    twin = ContainerVariant(
        f"{twin_of.variant_id}-alt", twin_of.vendor, twin_of.capacity_mb, twin_of.cost_cents
    )
    return Catalog("vendors_raw", tuple(frontier + extras + [twin]))


# -- plain chain processes -------------------------------------------------


_CHAIN_KINDS = ("filter", "store", "mapper")


def _chain_graph(tenant: str, n_nodes: int, shareable: bool) -> IPCG:
    if n_nodes < 2:
        raise ValueError("a process chain needs at least start and end")
    b = GraphBuilder(tenant)
    doc = Contract.make(pl={"doc"})
    b.add_node(
        "n00",
        "start:receive",
        PatternType.START,
        PatternCharacteristics(message_cardinality=(0, 1), message_generating=True, shareable=shareable),
    )
    prev = "n00"
    for i in range(1, n_nodes - 1):
        nid = f"n{i:02d}"
        kind = _CHAIN_KINDS[(i - 1) % len(_CHAIN_KINDS)]
        b.add_node(
            nid,
            f"{kind}:step {i}",
            PatternType.MESSAGE_PROCESSOR,
            PatternCharacteristics(shareable=shareable),
        )
        b.add_edge(prev, nid, contract=doc)
        prev = nid
    end = f"n{n_nodes - 1:02d}"
    b.add_node(end, "end:done", PatternType.END, PatternCharacteristics(access="ro", shareable=shareable))
    b.add_edge(prev, end, contract=doc)
    return b.freeze()


def _mixed_chain(tenant: str, shareable_units: int, nonshareable_units: int) -> IPCG:
    """A chain whose head is shareable and whose tail (including the end)
    is not, so decomposition cuts it exactly once. The piece sizes come out
    at ``shareable_units`` and ``nonshareable_units`` patterns including the
    call/receiver plumbing the cut adds."""
    head = shareable_units - 2  # start + head processors + call-to-be
    tail = nonshareable_units - 2  # receiver-to-be + tail processors + end
    if head < 1 or tail < 1:
        raise ValueError("piece sizes leave no room for processors")
    b = GraphBuilder(tenant)
    doc = Contract.make(pl={"doc"})
    b.add_node(
        "n00",
        "start:receive",
        PatternType.START,
        PatternCharacteristics(message_cardinality=(0, 1), message_generating=True),
    )
    prev = "n00"
    total = head + tail
    for i in range(1, total + 1):
        nid = f"n{i:02d}"
        kind = _CHAIN_KINDS[(i - 1) % len(_CHAIN_KINDS)]
        b.add_node(
            nid,
            f"{kind}:step {i}",
            PatternType.MESSAGE_PROCESSOR,
            PatternCharacteristics(shareable=i <= head),
        )
        b.add_edge(prev, nid, contract=doc)
        prev = nid
    end = f"n{total + 1:02d}"
    b.add_node(end, "end:done", PatternType.END, PatternCharacteristics(access="ro", shareable=False))
    b.add_edge(prev, end, contract=doc)
    return b.freeze()


def example1_workload() -> Workload:
    return Workload(
        (
            NamedGraph("pc_t1_1", _chain_graph("t1", 13, True)),
            NamedGraph("pc_t1_2", _chain_graph("t1", 19, False)),
            NamedGraph("pc_t1_3", _chain_graph("t1", 50, False)),
            NamedGraph("pc_t2_1", _chain_graph("t2", 11, True)),
            NamedGraph("pc_t3_1", _chain_graph("t3", 21, True)),
        )
    )


def edocuments_workload() -> Workload:
    """Thirteen processes, tenants round-robin, six with non-shareable tails.

    Cutting the six mixed ones yields 19 pieces: per tenant 3840 MB of
    non-shareable load, plus a 4096 MB shareable pool — forcing four 4096 MB
    containers at 28.08 EUR/mo each under the ``edocs`` catalog.
    """
    mixed = [
        ("t1", 8, 30),
        ("t2", 7, 27),
        ("t3", 6, 31),
        ("t1", 9, 30),
        ("t2", 5, 33),
        ("t3", 8, 29),
    ]
    entries = []
    for k, (tenant, sh_units, nonsh_units) in enumerate(mixed, start=1):
        entries.append(NamedGraph(f"p{k}", _mixed_chain(tenant, sh_units, nonsh_units)))
    tenants = ("t1", "t2", "t3")
    for k in range(7, 14):
        entries.append(NamedGraph(f"p{k}", _chain_graph(tenants[(k - 7) % 3], 3, True)))
    return Workload(tuple(entries))


# -- branching fixture ---------------------------------------------------------


def sample_mixed() -> IPCG:
    """Seven patterns, four flows crossing the shareability boundary.

    Decomposes into three shareable pieces and one non-shareable piece.
    """
    b = GraphBuilder("acme")
    pl = Contract.make(pl={"payload"})
    b.add_node(
        "in",
        "start:intake",
        PatternType.START,
        PatternCharacteristics(message_cardinality=(0, 1), message_generating=True),
    )
    b.add_node("prep", "filter:prepare", PatternType.MESSAGE_PROCESSOR, PatternCharacteristics())
    b.add_node(
        "route",
        "content-based-router:triage",
        PatternType.CONDITION,
        PatternCharacteristics(access="ro", conditions=("audit=='yes'", "audit=='no'")),
    )
    b.add_node(
        "audit",
        "content-based-router:audit",
        PatternType.CONDITION,
        PatternCharacteristics(access="ro", conditions=("flagged", "clean"), shareable=False),
    )
    b.add_node(
        "collect",
        "structural-join:collect",
        PatternType.STRUCTURAL_JOIN,
        PatternCharacteristics(access="ro", shareable=False),
    )
    b.add_node("out_a", "end:audit archive", PatternType.END, PatternCharacteristics(access="ro"))
    b.add_node("out_b", "end:delivery", PatternType.END, PatternCharacteristics(access="ro"))
    for a, c in [
        ("in", "prep"),
        ("prep", "route"),
        ("route", "audit"),
        ("route", "collect"),
        ("audit", "collect"),
        ("audit", "out_a"),
        ("collect", "out_b"),
    ]:
        b.add_edge(a, c, contract=pl)
    return b.freeze()


# -- invoicing fixture -----------------------------------------------------


def invoicing() -> IPCG:
    """A 17-pattern e-invoicing process: sign, route to a test or production
    endpoint of the same document-interchange system, collect the receipt,
    map the response back. Two enricher runs are combinable and the router
    qualifies for a routing slip, so improvement removes five patterns."""
    b = GraphBuilder("erp")

    def c(concepts=None, **elems) -> Contract:
        return Contract.make(concepts, **elems)

    hdr0 = {"mode"}
    pl0 = {"invoice", "fiscal_code_client"}
    s_out = c(hdr=hdr0, pl=pl0)
    hdr1 = hdr0 | {"identity_code", "id_sender"}
    e1_out = c(hdr=hdr1, pl=pl0)
    hdr2 = hdr1 | {"sdi_identity"}
    e2_out = c(hdr=hdr2, pl=pl0)
    pl_signed = pl0 | {"signed_invoice"}
    signed = {"signed": "yes"}
    sg_out = c(signed, hdr=hdr2, pl=pl_signed)
    pl_mapped = {"invoice", "signed_invoice", "fiscal_code"}
    m1_out = c(signed, hdr=hdr2, pl=pl_mapped)
    pl_receipt = pl_mapped | {"receipt"}
    call_out = c(signed, hdr=hdr2, pl=pl_receipt)
    pl_resp = pl_receipt | {"response_document"}
    e3_out = c(signed, hdr=hdr2, pl=pl_resp)
    hdr3 = hdr2 | {"data_time_reception"}
    e4_out = c(signed, hdr=hdr3, pl=pl_resp)
    pl_erp = pl_receipt | {"erp_response"}
    m2_out = c(signed, hdr=hdr3, pl=pl_erp)

    b.add_node(
        "s",
        "start:invoice intake",
        PatternType.START,
        PatternCharacteristics(message_cardinality=(0, 1), message_generating=True),
    )
    b.add_node(
        "e1",
        "content-enricher:Prepare to store",
        PatternType.MESSAGE_PROCESSOR,
        PatternCharacteristics(program="lookup sender identity"),
    )
    b.add_node(
        "e2",
        "content-enricher:setHeader",
        PatternType.MESSAGE_PROCESSOR,
        PatternCharacteristics(program="set interchange identity header"),
    )
    b.add_node(
        "sg",
        "signer:PKCS7 sign",
        PatternType.MESSAGE_PROCESSOR,
        PatternCharacteristics(program="sign payload"),
    )
    b.add_node(
        "m1",
        "message-translator:interchange mapping",
        PatternType.MESSAGE_PROCESSOR,
        PatternCharacteristics(program="map client fiscal code"),
    )
    b.add_node("st1", "store:cache signed invoice", PatternType.MESSAGE_PROCESSOR, PatternCharacteristics())
    b.add_node("st2", "store:persist invoice", PatternType.MESSAGE_PROCESSOR, PatternCharacteristics())
    b.add_node(
        "r",
        "content-based-router:mode",
        PatternType.CONDITION,
        PatternCharacteristics(
            access="ro", conditions=("mode=='test'", "mode=='prod'", "otherwise")
        ),
    )
    b.add_node(
        "c1",
        "request-reply:submit test",
        PatternType.EXTERNAL_CALL,
        PatternCharacteristics(),
        remote_link="sdi://test",
    )
    b.add_node(
        "c2",
        "request-reply:submit prod",
        PatternType.EXTERNAL_CALL,
        PatternCharacteristics(),
        remote_link="sdi://prod",
    )
    b.add_node("de", "end:discard", PatternType.END, PatternCharacteristics(access="ro"))
    b.add_node(
        "j",
        "structural-join:await receipt",
        PatternType.STRUCTURAL_JOIN,
        PatternCharacteristics(access="ro"),
    )
    b.add_node(
        "e3",
        "content-enricher:map response",
        PatternType.MESSAGE_PROCESSOR,
        PatternCharacteristics(program="extract response document"),
    )
    b.add_node(
        "e4",
        "content-enricher:setHeader response",
        PatternType.MESSAGE_PROCESSOR,
        PatternCharacteristics(program="stamp reception time"),
    )
    b.add_node("st3", "store:persist response", PatternType.MESSAGE_PROCESSOR, PatternCharacteristics())
    b.add_node(
        "m2",
        "message-translator:ERP response mapping",
        PatternType.MESSAGE_PROCESSOR,
        PatternCharacteristics(program="map response to ERP schema"),
    )
    b.add_node("en", "end:done", PatternType.END, PatternCharacteristics(access="ro"))

    b.add_edge("s", "e1", out_contract=s_out, in_contract=s_out)
    b.add_edge("e1", "e2", out_contract=e1_out, in_contract=e1_out)
    b.add_edge("e2", "sg", out_contract=e2_out, in_contract=e2_out)
    b.add_edge("sg", "m1", out_contract=sg_out, in_contract=sg_out)
    b.add_edge("m1", "st1", out_contract=m1_out, in_contract=m1_out)
    b.add_edge("st1", "st2", out_contract=m1_out, in_contract=m1_out)
    b.add_edge("st2", "r", out_contract=m1_out, in_contract=m1_out)
    b.add_edge("r", "c1", out_contract=m1_out, in_contract=m1_out)
    b.add_edge("r", "c2", out_contract=m1_out, in_contract=m1_out)
    b.add_edge("r", "de", out_contract=m1_out, in_contract=m1_out)
    b.add_edge("c1", "j", out_contract=call_out, in_contract=call_out)
    b.add_edge("c2", "j", out_contract=call_out, in_contract=call_out)
    b.add_edge("j", "e3", out_contract=call_out, in_contract=call_out)
    b.add_edge("e3", "e4", out_contract=e3_out, in_contract=e3_out)
    b.add_edge("e4", "st3", out_contract=e4_out, in_contract=e4_out)
    b.add_edge("st3", "m2", out_contract=e4_out, in_contract=e4_out)
    b.add_edge("m2", "en", out_contract=m2_out, in_contract=m2_out)
    return b.freeze()


# -- background workloads for the service ------------------------------------


def background_eu_workload() -> Workload:
    return Workload(
        (
            PlacementItem("bg-cache", 640.0, "t9", True),
            PlacementItem("bg-feed", 384.0, "t9", True),
        ),
        region="eu-central",
    )


def background_us_workload() -> Workload:
    return Workload((PlacementItem("bg-hook", 512.0, "t8", True),), region="us-east")


# -- file generation -----------------------------------------------------------


def _catalog_text(cat: Catalog, comment: str) -> str:
    doc = {"source": cat.source, "comment": comment}
    doc["variants"] = [v.to_json() for v in cat.variants if not v.is_zero]
    return json.dumps(doc, indent=2) + "\n"


def build_all() -> dict[str, str]:
    """Relative path → file content for every bundled fixture."""
    return {
        "catalogs/example1.catalog.json": _catalog_text(
            example1_catalog(), "two mid-size variants; one pattern unit = 64 MB"
        ),
        "catalogs/aws_t2.catalog.json": _catalog_text(
            aws_t2_catalog(), "t2 line, EUR/mo list prices; capacities in MB"
        ),
        "catalogs/edocs.catalog.json": _catalog_text(
            edocs_catalog(), "synthetic four-step ladder used by the edocuments workload"
        ),
        "catalogs/vendors_raw.catalog.json": _catalog_text(
            vendors_raw_catalog(), "synthetic unpruned vendor list; normalizes to 14 variants"
        ),
        "workloads/example1.workload.json": workload_to_json(example1_workload()),
        "workloads/edocuments.workload.json": workload_to_json(edocuments_workload()),
        "workloads/background_eu.workload.json": workload_to_json(background_eu_workload()),
        "workloads/background_us.workload.json": workload_to_json(background_us_workload()),
        "graphs/sample_mixed.json": serialize_ipcg(sample_mixed()),
        "graphs/invoicing.json": serialize_ipcg(invoicing()),
    }


def write_all(root: Path | None = None) -> list[Path]:
    root = root or data_dir()
    written = []
    for rel, text in build_all().items():
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        written.append(path)
    return written


if __name__ == "__main__":  # pragma: no cover
    for p in write_all():
        print(p)
