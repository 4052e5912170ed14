"""Graph rewrites: decomposition cuts, neighbor combination, routing slips.

Four rules operate on integration process graphs:

* ``SH_TO_NONSH`` / ``NONSH_TO_SH`` match flows crossing a shareability
  boundary. Applying one replaces the edge with a request-reply call on the
  producer side and a linked receiver on the consumer side, so the graph can
  afterwards be split into independently placeable pieces.
* ``COMBINE_NEIGHBORS`` merges a run of same-kind sequential processors
  (content enrichers, message translators) into one node when their data
  accesses cannot conflict.
* ``ROUTER_TO_ROUTING_SLIP`` collapses a content-based router whose branches
  all lead to calls against the same receiver system into a slip-setting
  enricher followed by a single call.

``decompose`` applies the cut rules exhaustively and splits the result into
its weakly connected components. ``enumerate_proposals`` prices candidate
rewrites against a cost oracle and keeps those that do not increase cost;
``improve`` applies simplifying rewrites to one graph until none is left.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence

from .graph import (
    Contract,
    ELEMENT_KEYS,
    GraphBuilder,
    IPCG,
    PatternCharacteristics,
    PatternNode,
    PatternType,
    validate_ipcg,
)

COMBINABLE_KINDS = ("content-enricher", "message-translator")

PLUMBING_CAPACITY_MB = 64.0


class RuleId(str, Enum):
    COMBINE_NEIGHBORS = "combine-neighbors"
    ROUTER_TO_ROUTING_SLIP = "router-to-routing-slip"
    SH_TO_NONSH = "shareable-to-nonshareable"
    NONSH_TO_SH = "nonshareable-to-shareable"
    DECOMPOSE = "decompose"


RULE_ORDER = {rule: i for i, rule in enumerate(RuleId)}


@dataclass(frozen=True)
class Match:
    """An applicable rewrite site.

    ``nodes`` identifies the site: the (producer, consumer) pair for cut
    rules, the full run for COMBINE_NEIGHBORS, the router id for
    ROUTER_TO_ROUTING_SLIP.
    """

    rule: RuleId
    nodes: tuple[str, ...]

    @property
    def key(self):
        return (RULE_ORDER[self.rule], self.nodes)


@dataclass(frozen=True)
class RewriteResult:
    rule: RuleId
    graphs: tuple[IPCG, ...]
    graph_ids: tuple[str, ...]
    nodes_before: int
    nodes_after: int
    capacity_before_mb: float
    capacity_after_mb: float
    cut_edges: tuple[tuple[str, str], ...] = ()


class RewriteError(ValueError):
    pass


# -- matching -----------------------------------------------------------------


def _identifiers(c: Contract) -> frozenset[str]:
    ids: set[str] = set()
    for _, members in c.elements:
        ids |= members
    return frozenset(ids)


def _reads(n: PatternNode) -> frozenset[str]:
    return _identifiers(n.in_contracts[0]) if n.in_contracts else frozenset()


def _produces(n: PatternNode) -> frozenset[str]:
    return _identifiers(n.out_contracts[0]) if n.out_contracts else frozenset()


def _writes(n: PatternNode) -> frozenset[str]:
    return _produces(n) - _reads(n)


def _deletes(n: PatternNode) -> frozenset[str]:
    return _reads(n) - _produces(n)


def _modifies(n: PatternNode) -> frozenset[str]:
    return _writes(n) | _deletes(n)


def _run_conflict(run: Sequence[PatternNode]) -> bool:
    """Two nodes of a run conflict when they modify a common identifier or
    an earlier one deletes something a later one still reads."""
    for i, a in enumerate(run):
        for b in run[i + 1 :]:
            if _modifies(a) & _modifies(b):
                return True
            if _deletes(a) & _reads(b):
                return True
    return False


def _combinable(g: IPCG, n: PatternNode) -> bool:
    return (
        n.type is PatternType.MESSAGE_PROCESSOR
        and n.kind in COMBINABLE_KINDS
        and g.in_degree(n.node_id) == 1
        and g.out_degree(n.node_id) == 1
    )


def _combine_runs(g: IPCG) -> list[tuple[str, ...]]:
    runs = []
    for n in g.nodes:
        if not _combinable(g, n):
            continue
        pred = g.node(g.predecessors(n.node_id)[0])
        if _combinable(g, pred) and pred.kind == n.kind:
            continue  # not the head of its run
        run = [n]
        while True:
            nxt = g.node(g.successors(run[-1].node_id)[0])
            if _combinable(g, nxt) and nxt.kind == run[0].kind:
                run.append(nxt)
            else:
                break
        if len(run) < 2:
            continue
        if len({v.char.shareable for v in run}) != 1:
            continue
        if _run_conflict(run):
            continue
        runs.append(tuple(v.node_id for v in run))
    return runs


def _slip_site(g: IPCG, r: PatternNode) -> Optional[dict]:
    """Routing-slip site details for router ``r``, or None."""
    if r.type is not PatternType.CONDITION or r.is_plumbing:
        return None
    if g.in_degree(r.node_id) != 1:
        return None
    branches = g.successors(r.node_id)
    if len(branches) < 2:
        return None
    calls, ends = [], []
    for t in branches:
        tn = g.node(t)
        if tn.type is PatternType.EXTERNAL_CALL and tn.remote_link and "://" in tn.remote_link:
            calls.append(tn)
        elif tn.type is PatternType.END:
            ends.append(tn)
        else:
            return None
    if len(calls) < 2:
        return None
    base_in = calls[0].in_contracts[0]
    if any(c.in_contracts[0] != base_in for c in calls):
        return None
    schemes = {c.remote_link.split("://", 1)[0] for c in calls}
    if len(schemes) != 1:
        return None
    if len({c.char.shareable for c in calls}) != 1:
        return None
    successor_lists = [g.successors(c.node_id) for c in calls]
    if all(not outs for outs in successor_lists):
        successor = None
    else:
        targets = {outs[0] for outs in successor_lists if outs}
        if len(targets) != 1 or any(len(outs) != 1 for outs in successor_lists):
            return None
        successor = targets.pop()
        out_cs = {g.out_contract(c.node_id, successor) for c in calls}
        in_cs = {g.in_contract(c.node_id, successor) for c in calls}
        if len(out_cs) != 1 or len(in_cs) != 1:
            return None
    return {
        "router": r.node_id,
        "calls": [c.node_id for c in calls],
        "ends": [e.node_id for e in ends],
        "successor": successor,
        "scheme": schemes.pop(),
    }


def _crossing_edges(g: IPCG, rule: RuleId) -> list[tuple[str, str]]:
    found = []
    for a, b in g.edges:
        na, nb = g.node(a), g.node(b)
        if na.is_plumbing or nb.is_plumbing:
            continue
        crossing_sh = na.char.shareable and not nb.char.shareable
        crossing_nonsh = not na.char.shareable and nb.char.shareable
        if (rule is RuleId.SH_TO_NONSH and crossing_sh) or (
            rule is RuleId.NONSH_TO_SH and crossing_nonsh
        ):
            found.append((a, b))
    found.sort(key=lambda e: (min(e), max(e)))
    return found


def find_matches(g: IPCG, rule: Optional[RuleId] = None) -> list[Match]:
    """All sites where ``rule`` (or any rule) currently applies.

    COMBINE_NEIGHBORS and ROUTER_TO_ROUTING_SLIP candidates are kept only
    when applying them yields a correct graph again, so every returned match
    is safe to apply.
    """
    if rule is None:
        out: list[Match] = []
        for r in (
            RuleId.COMBINE_NEIGHBORS,
            RuleId.ROUTER_TO_ROUTING_SLIP,
            RuleId.SH_TO_NONSH,
            RuleId.NONSH_TO_SH,
        ):
            out.extend(find_matches(g, r))
        return out
    if rule in (RuleId.SH_TO_NONSH, RuleId.NONSH_TO_SH):
        return [Match(rule, edge) for edge in _crossing_edges(g, rule)]
    if rule is RuleId.COMBINE_NEIGHBORS:
        matches = []
        for run in _combine_runs(g):
            m = Match(rule, run)
            try:
                result = apply_match(g, m)
            except RewriteError:
                continue
            if validate_ipcg(result.graphs[0]).is_correct:
                matches.append(m)
        matches.sort(key=lambda m: m.nodes)
        return matches
    if rule is RuleId.ROUTER_TO_ROUTING_SLIP:
        matches = []
        for n in g.nodes:
            if _slip_site(g, n) is None:
                continue
            m = Match(rule, (n.node_id,))
            try:
                result = apply_match(g, m)
            except RewriteError:
                continue
            if validate_ipcg(result.graphs[0]).is_correct:
                matches.append(m)
        matches.sort(key=lambda m: m.nodes)
        return matches
    raise RewriteError(f"rule {rule} has no direct matches; use decompose()")


# -- application --------------------------------------------------------------


def _cut_edge(b: GraphBuilder, u: str, v: str) -> None:
    oc, ic = b.remove_edge(u, v)
    link = f"link://{u}.{v}"
    call_id = b.fresh_id("call_")
    # plumbing is always shareable; piece homogeneity is judged modulo it
    b.add_node(
        call_id,
        f"request-reply:to {v}",
        PatternType.EXTERNAL_CALL,
        PatternCharacteristics(access="ro", capacity_mb=PLUMBING_CAPACITY_MB),
        remote_link=link,
    )
    recv_id = b.fresh_id("recv_")
    b.add_node(
        recv_id,
        f"start:from {u}",
        PatternType.START,
        PatternCharacteristics(access="ro", capacity_mb=PLUMBING_CAPACITY_MB),
        remote_link=link,
    )
    b.add_edge(u, call_id, out_contract=oc, in_contract=Contract.all_any())
    # the receiver re-offers exactly what travelled over the cut edge, with
    # concepts left open so downstream pins keep matching
    recv_out = Contract(elements=oc.elements)
    b.add_edge(recv_id, v, out_contract=recv_out, in_contract=ic)


def _apply_cut(g: IPCG, match: Match) -> RewriteResult:
    u, v = match.nodes
    if (u, v) not in g.edges:
        raise RewriteError(f"edge ({u}, {v}) not in graph")
    original_ids = {n.node_id for n in g.nodes}
    b = GraphBuilder.from_graph(g)
    _cut_edge(b, u, v)
    # a cut severs the process wherever the flow was the only bridge
    pieces = b.split_components()
    pieces.sort(key=lambda p: min(i for i in p.node_ids() if i in original_ids))
    graphs = tuple(p.freeze() for p in pieces)
    return RewriteResult(
        rule=match.rule,
        graphs=graphs,
        graph_ids=tuple(f"g{i}" for i in range(len(graphs))),
        nodes_before=len(g.nodes),
        nodes_after=sum(len(piece.nodes) for piece in graphs),
        capacity_before_mb=sum(n.char.capacity_mb for n in g.nodes),
        capacity_after_mb=sum(n.char.capacity_mb for piece in graphs for n in piece.nodes),
        cut_edges=((u, v),),
    )


def _merged_char(run: list[PatternNode]) -> PatternCharacteristics:
    programs = [n.char.program for n in run if n.char.program]
    return PatternCharacteristics(
        message_cardinality=(1, 1),
        access="rw" if any(n.char.access == "rw" for n in run) else "ro",
        message_generating=any(n.char.message_generating for n in run),
        conditions=(),
        program="\n".join(programs) if programs else None,
        capacity_mb=max(n.char.capacity_mb for n in run),
        shareable=run[0].char.shareable,
    )


def _merged_in_contract(run: list[PatternNode]) -> Contract:
    """Union of the run's reads, minus identifiers produced inside the run
    before they are read. Concepts come from the head's requirement."""
    merged: dict[str, set[str]] = {}
    written: set[str] = set()
    for n in run:
        for key, members in n.in_contracts[0].elements:
            merged.setdefault(key, set()).update(members - written)
        written |= _writes(n)
    head = run[0].in_contracts[0]
    elems = tuple((k, frozenset(merged[k])) for k in ELEMENT_KEYS if k in merged)
    return Contract(head.concepts, elems)


def _label(n: PatternNode) -> str:
    return n.name.split(":", 1)[1].strip() if ":" in n.name else n.name


def _apply_combine(g: IPCG, match: Match) -> RewriteResult:
    run = [g.node(i) for i in match.nodes]
    if len(run) < 2:
        raise RewriteError("combine needs at least two nodes")
    for a, b_ in zip(run, run[1:]):
        if (a.node_id, b_.node_id) not in g.edges:
            raise RewriteError(f"run is not a chain at ({a.node_id}, {b_.node_id})")
    head, tail = run[0], run[-1]
    pred = g.predecessors(head.node_id)[0]
    succ = g.successors(tail.node_id)[0]
    pred_out = g.out_contract(pred, head.node_id)
    succ_in = g.in_contract(tail.node_id, succ)
    tail_out = g.out_contract(tail.node_id, succ)

    b = GraphBuilder.from_graph(g)
    for n in run[1:]:
        b.remove_node(n.node_id)
    b.update_node(
        head.node_id,
        name=f"{head.kind}:{' + '.join(_label(n) for n in run)}",
        char=_merged_char(run),
    )
    b.remove_edge(pred, head.node_id)
    b.add_edge(pred, head.node_id, out_contract=pred_out, in_contract=_merged_in_contract(run))
    b.add_edge(head.node_id, succ, out_contract=tail_out, in_contract=succ_in)
    after = b.freeze()
    return RewriteResult(
        rule=match.rule,
        graphs=(after,),
        graph_ids=("g0",),
        nodes_before=len(g.nodes),
        nodes_after=len(after.nodes),
        capacity_before_mb=sum(n.char.capacity_mb for n in g.nodes),
        capacity_after_mb=sum(n.char.capacity_mb for n in after.nodes),
    )


def _selector_program(g: IPCG, site: dict) -> str:
    router = g.node(site["router"])
    branches = g.successors(router.node_id)
    conditions = router.char.conditions
    parts = []
    for i, target in enumerate(branches):
        cond = conditions[i] if i < len(conditions) else "otherwise"
        tn = g.node(target)
        dest = tn.remote_link if tn.remote_link else "discard"
        parts.append(f"{cond} => {dest}")
    return "set hdr.routing_slip = first-match(" + "; ".join(parts) + ")"


def _apply_slip(g: IPCG, match: Match) -> RewriteResult:
    site = _slip_site(g, g.node(match.nodes[0]))
    if site is None:
        raise RewriteError(f"node {match.nodes[0]} is not a routing-slip site")
    router = g.node(site["router"])
    calls = [g.node(c) for c in site["calls"]]
    pred = g.predecessors(router.node_id)[0]
    pred_out = g.out_contract(pred, router.node_id)
    router_in = g.in_contract(pred, router.node_id)
    call_in = calls[0].in_contracts[0]

    successor = site["successor"]
    bypass_join = False
    if successor is not None:
        succ_node = g.node(successor)
        if (
            succ_node.type is PatternType.STRUCTURAL_JOIN
            and g.in_degree(successor) == len(calls)
        ):
            bypass_join = True

    b = GraphBuilder.from_graph(g)

    slip_id = b.fresh_id("slip_")
    slip_out = pred_out.with_elements(
        hdr=pred_out.element_map().get("hdr", frozenset()) | {"routing_slip"}
    )
    b.add_node(
        slip_id,
        "content-enricher:routing slip",
        PatternType.MESSAGE_PROCESSOR,
        PatternCharacteristics(
            access="rw",
            program=_selector_program(g, site),
            capacity_mb=router.char.capacity_mb,
            shareable=router.char.shareable,
        ),
    )
    new_call_id = b.fresh_id("call_")
    call_char = PatternCharacteristics(
        access="rw" if any(c.char.access == "rw" for c in calls) else "ro",
        message_generating=any(c.char.message_generating for c in calls),
        conditions=router.char.conditions,
        capacity_mb=max(c.char.capacity_mb for c in calls),
        shareable=calls[0].char.shareable,
    )
    b.add_node(
        new_call_id,
        "request-reply:routed",
        PatternType.EXTERNAL_CALL,
        call_char,
        remote_link=f"{site['scheme']}://routed",
    )

    # the call now also consumes the slip header when headers are constrained
    in_elems = call_in.element_map()
    if "hdr" in in_elems:
        new_call_in = call_in.with_elements(hdr=in_elems["hdr"] | {"routing_slip"})
    else:
        new_call_in = call_in

    onward: Optional[tuple[str, Contract, Contract]] = None
    if successor is not None:
        if bypass_join:
            join = g.node(successor)
            join_succ = g.successors(successor)[0]
            onward = (
                join_succ,
                g.out_contract(successor, join_succ),
                g.in_contract(successor, join_succ),
            )
        else:
            onward = (
                successor,
                g.out_contract(site["calls"][0], successor),
                g.in_contract(site["calls"][0], successor),
            )

    b.remove_node(router.node_id)
    for cid in site["calls"]:
        b.remove_node(cid)
    for eid in site["ends"]:
        if not b.predecessors(eid):
            b.remove_node(eid)
    if bypass_join:
        b.remove_node(successor)

    b.add_edge(pred, slip_id, out_contract=pred_out, in_contract=router_in)
    b.add_edge(slip_id, new_call_id, out_contract=slip_out, in_contract=new_call_in)
    if onward is not None:
        b.add_edge(new_call_id, onward[0], out_contract=onward[1], in_contract=onward[2])

    after = b.freeze()
    return RewriteResult(
        rule=match.rule,
        graphs=(after,),
        graph_ids=("g0",),
        nodes_before=len(g.nodes),
        nodes_after=len(after.nodes),
        capacity_before_mb=sum(n.char.capacity_mb for n in g.nodes),
        capacity_after_mb=sum(n.char.capacity_mb for n in after.nodes),
    )


def apply_match(g: IPCG, match: Match) -> RewriteResult:
    if match.rule in (RuleId.SH_TO_NONSH, RuleId.NONSH_TO_SH):
        return _apply_cut(g, match)
    if match.rule is RuleId.COMBINE_NEIGHBORS:
        return _apply_combine(g, match)
    if match.rule is RuleId.ROUTER_TO_ROUTING_SLIP:
        return _apply_slip(g, match)
    raise RewriteError(f"cannot apply {match.rule} as a single match")


# -- decomposition ------------------------------------------------------------


def decompose(g: IPCG) -> RewriteResult:
    """Cut every shareability-crossing flow and split into components.

    Shareable-to-non-shareable flows are cut first, then the reverse
    direction, smallest edge first. Pieces are ordered by their smallest
    original node id and handed out as g0..gk. A graph without crossing
    flows comes back unchanged as the single piece g0.
    """
    original_ids = {n.node_id for n in g.nodes}
    b = GraphBuilder.from_graph(g)
    cut: list[tuple[str, str]] = []
    for rule in (RuleId.SH_TO_NONSH, RuleId.NONSH_TO_SH):
        while True:
            current = b.freeze()
            edges = _crossing_edges(current, rule)
            if not edges:
                break
            u, v = edges[0]
            _cut_edge(b, u, v)
            cut.append((u, v))

    pieces = b.split_components()
    pieces.sort(key=lambda p: min(i for i in p.node_ids() if i in original_ids))
    graphs = tuple(p.freeze() for p in pieces)
    return RewriteResult(
        rule=RuleId.DECOMPOSE,
        graphs=graphs,
        graph_ids=tuple(f"g{i}" for i in range(len(graphs))),
        nodes_before=len(g.nodes),
        nodes_after=sum(len(piece.nodes) for piece in graphs),
        capacity_before_mb=sum(n.char.capacity_mb for n in g.nodes),
        capacity_after_mb=sum(n.char.capacity_mb for piece in graphs for n in piece.nodes),
        cut_edges=tuple(cut),
    )


# -- verification -------------------------------------------------------------


def verify_rewrite(before: IPCG, result: RewriteResult) -> list[str]:
    """Independent checks that a rewrite preserved what it must preserve.

    Returns a list of problems; empty means the rewrite verifies.
    """
    problems = []
    for gid, piece in zip(result.graph_ids, result.graphs):
        report = validate_ipcg(piece)
        if not report.is_correct:
            problems.append(f"{gid}: invalid after rewrite: {', '.join(report.codes())}")
        if piece.tenant != before.tenant:
            problems.append(f"{gid}: tenant changed")
    actual_after = sum(n.char.capacity_mb for piece in result.graphs for n in piece.nodes)
    if abs(actual_after - result.capacity_after_mb) > 1e-9:
        problems.append("reported capacity does not match the graphs")

    if result.rule is RuleId.DECOMPOSE or result.rule in (RuleId.SH_TO_NONSH, RuleId.NONSH_TO_SH):
        expected = result.capacity_before_mb + 2 * PLUMBING_CAPACITY_MB * len(result.cut_edges)
        if abs(result.capacity_after_mb - expected) > 1e-9:
            problems.append(
                f"capacity grew by {result.capacity_after_mb - result.capacity_before_mb:g} MB "
                f"for {len(result.cut_edges)} cut(s)"
            )
        seen: dict[str, int] = {}
        for i, piece in enumerate(result.graphs):
            for n in piece.nodes:
                if n.is_plumbing:
                    continue
                if n.node_id in seen:
                    problems.append(f"node {n.node_id} appears in several pieces")
                seen[n.node_id] = i
        before_ids = {n.node_id for n in before.nodes}
        if set(seen) != before_ids:
            problems.append("original nodes were lost or invented")
        if result.rule is RuleId.DECOMPOSE:
            for gid, piece in zip(result.graph_ids, result.graphs):
                flags = {n.char.shareable for n in piece.nodes if not n.is_plumbing}
                if len(flags) > 1:
                    problems.append(f"{gid}: mixed shareability after decomposition")
    elif result.rule is RuleId.COMBINE_NEIGHBORS:
        if result.nodes_after >= result.nodes_before:
            problems.append("combine did not reduce the node count")
        if result.capacity_after_mb > result.capacity_before_mb:
            problems.append("combine increased total capacity")
    elif result.rule is RuleId.ROUTER_TO_ROUTING_SLIP:
        if result.nodes_after >= result.nodes_before:
            problems.append("routing slip did not reduce the node count")
    return problems


# -- proposals ----------------------------------------------------------------


Pricer = Callable[[Sequence[IPCG]], int]


@dataclass(frozen=True)
class Proposal:
    proposal_id: str
    rule: RuleId
    graph_index: int
    match: Optional[Match]
    description: str
    nodes_removed: int
    capacity_delta_mb: float
    cost_before_cents: int
    cost_after_cents: int
    preview_graph_ids: tuple[str, ...] = ("g0",)

    @property
    def savings_cents(self) -> int:
        return self.cost_before_cents - self.cost_after_cents

    def to_json(self) -> dict:
        return {
            "id": self.proposal_id,
            "rule": self.rule.value,
            "nodes_removed": self.nodes_removed,
            "cost_before_eur": self.cost_before_cents / 100.0,
            "cost_after_eur": self.cost_after_cents / 100.0,
            "description": self.description,
            "preview_graph_ids": list(self.preview_graph_ids),
        }


def _describe(rule: RuleId, match: Optional[Match], result: RewriteResult) -> str:
    if rule is RuleId.COMBINE_NEIGHBORS:
        return f"combine {len(match.nodes)} sequential processors ({', '.join(match.nodes)})"
    if rule is RuleId.ROUTER_TO_ROUTING_SLIP:
        return f"replace router {match.nodes[0]} with a routing slip"
    if rule is RuleId.DECOMPOSE:
        return (
            f"cut {len(result.cut_edges)} shareability-crossing flow(s) "
            f"and split into {len(result.graphs)} processes"
        )
    return f"cut flow {match.nodes[0]} -> {match.nodes[1]}"


def _candidates(g: IPCG) -> list[tuple[RuleId, Optional[Match], RewriteResult]]:
    out: list[tuple[RuleId, Optional[Match], RewriteResult]] = []
    for rule in (RuleId.COMBINE_NEIGHBORS, RuleId.ROUTER_TO_ROUTING_SLIP):
        for m in find_matches(g, rule):
            out.append((rule, m, apply_match(g, m)))
    dec = decompose(g)
    if dec.cut_edges:
        out.append((RuleId.DECOMPOSE, None, dec))
    return out


def enumerate_proposals(graphs: Sequence[IPCG], pricer: Pricer) -> list[Proposal]:
    """Cost-non-increasing rewrite proposals over a bundle of graphs.

    Each proposal rewrites exactly one graph of the bundle; its cost effect
    is priced on the whole bundle. Sorted by savings (largest first), then
    by node reduction, rule, and site; ids are positions in that order.
    """
    graphs = list(graphs)
    cost_before = pricer(graphs)
    rows = []
    for k, g in enumerate(graphs):
        for rule, match, result in _candidates(g):
            candidate = graphs[:k] + list(result.graphs) + graphs[k + 1 :]
            cost_after = pricer(candidate)
            if cost_after > cost_before:
                continue
            rows.append(
                (
                    cost_before - cost_after,
                    result.nodes_before - result.nodes_after,
                    k,
                    rule,
                    match,
                    result,
                    cost_after,
                )
            )
    rows.sort(
        key=lambda row: (
            -row[0],
            row[1],
            row[2],
            RULE_ORDER[row[3]],
            row[4].nodes if row[4] else (),
        )
    )
    proposals = []
    for i, (savings, removed, k, rule, match, result, cost_after) in enumerate(rows):
        proposals.append(
            Proposal(
                proposal_id=f"p{i}",
                rule=rule,
                graph_index=k,
                match=match,
                description=_describe(rule, match, result),
                nodes_removed=removed,
                capacity_delta_mb=result.capacity_after_mb - result.capacity_before_mb,
                cost_before_cents=cost_before,
                cost_after_cents=cost_after,
                preview_graph_ids=result.graph_ids,
            )
        )
    return proposals


def apply_proposal(graphs: Sequence[IPCG], proposal: Proposal) -> list[IPCG]:
    """The bundle with the proposal's rewrite applied to its graph."""
    graphs = list(graphs)
    g = graphs[proposal.graph_index]
    if proposal.rule is RuleId.DECOMPOSE:
        result = decompose(g)
        if not result.cut_edges:
            raise RewriteError("nothing to decompose any more")
    else:
        result = apply_match(g, proposal.match)
    return graphs[: proposal.graph_index] + list(result.graphs) + graphs[proposal.graph_index + 1 :]


def improve(
    g: IPCG, pricer: Optional[Pricer] = None
) -> tuple[IPCG, list[Proposal]]:
    """Apply node-reducing rewrites to one graph until none applies.

    With a pricer, only cost-non-increasing rewrites are applied (best
    savings first); without one, every combine/slip simplification is taken.
    Decomposition is never applied here — the result is a single graph.
    """
    current = g
    applied: list[Proposal] = []
    while True:
        picked = None
        if pricer is None:
            matches = find_matches(current, RuleId.COMBINE_NEIGHBORS) + find_matches(
                current, RuleId.ROUTER_TO_ROUTING_SLIP
            )
            if matches:
                m = matches[0]
                result = apply_match(current, m)
                picked = Proposal(
                    proposal_id=f"p{len(applied)}",
                    rule=m.rule,
                    graph_index=0,
                    match=m,
                    description=_describe(m.rule, m, result),
                    nodes_removed=result.nodes_before - result.nodes_after,
                    capacity_delta_mb=result.capacity_after_mb - result.capacity_before_mb,
                    cost_before_cents=0,
                    cost_after_cents=0,
                )
                current = result.graphs[0]
        else:
            options = [
                p
                for p in enumerate_proposals([current], pricer)
                if p.rule is not RuleId.DECOMPOSE
            ]
            if options:
                picked = options[0]
                current = apply_proposal([current], picked)[0]
        if picked is None:
            return current, applied
        applied.append(picked)
