"""Typed, contract-annotated integration process graphs.

An integration process is a connected DAG of pattern nodes. Every node
carries characteristics (capacity, shareability, access mode, ...) and one
contract per incident edge: in-contracts describe what a node requires from
its predecessors, out-contracts what it promises to successors. Contract
lists are positional: the k-th in/out contract of a node belongs to the k-th
incoming/outgoing edge of that node in the graph's edge order.

Conventions used throughout:
  * Node names may carry a kind prefix, e.g. ``content-enricher:setHeader``.
    The part before the first ``:`` is the pattern kind; rewrite rules use it.
  * ``remote_link`` marks cross-graph communication. External-call nodes
    link to a receiver; receivers (start-typed) link back to their caller.
    A terminal external call with a remote link is a valid local terminus:
    the link stands in for the forward edge that now lives in another graph.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence


class PatternType(str, Enum):
    START = "start"
    END = "end"
    MESSAGE_PROCESSOR = "message-processor"
    FORK = "fork"
    STRUCTURAL_JOIN = "structural-join"
    CONDITION = "condition"
    MERGE = "merge"
    EXTERNAL_CALL = "external-call"


#: Types that may carry routing conditions.
ROUTING_TYPES = (PatternType.CONDITION, PatternType.EXTERNAL_CALL)

CONCEPTS = ("signed", "encrypted", "encoded")
CONCEPT_VALUES = ("yes", "no", "any")
ANY = "any"
ELEMENT_KEYS = ("hdr", "pl", "attch")

# Violation codes are stable API: tools and tests match on them.
MISSING_START = "MISSING_START"
MISSING_END = "MISSING_END"
CARDINALITY = "CARDINALITY"
DISCONNECTED = "DISCONNECTED"
CYCLE = "CYCLE"
CONTRACT_MISMATCH = "CONTRACT_MISMATCH"


class GraphError(ValueError):
    """Raised when a graph or node cannot even be constructed."""


@dataclass(frozen=True)
class Contract:
    """Message contract: security concepts plus required/produced elements.

    ``concepts`` is total over (signed, encrypted, encoded); missing entries
    default to ``any``. ``elements`` is partial: an absent key expresses no
    constraint for that slot, an empty set demands that nothing arrives there.
    """

    concepts: tuple[tuple[str, str], ...] = (("signed", ANY), ("encrypted", ANY), ("encoded", ANY))
    elements: tuple[tuple[str, frozenset[str]], ...] = ()

    @staticmethod
    def make(concepts: Optional[Mapping[str, str]] = None, **element_sets) -> "Contract":
        cmap = {c: ANY for c in CONCEPTS}
        for key, value in (concepts or {}).items():
            if key not in CONCEPTS:
                raise GraphError(f"unknown concept {key!r}")
            if value not in CONCEPT_VALUES:
                raise GraphError(f"concept {key!r} must be yes/no/any, got {value!r}")
            cmap[key] = value
        elems = []
        for key in ELEMENT_KEYS:
            if key in element_sets and element_sets[key] is not None:
                elems.append((key, frozenset(element_sets[key])))
        unknown = set(element_sets) - set(ELEMENT_KEYS) - {k for k in element_sets if element_sets[k] is None}
        if unknown:
            raise GraphError(f"unknown element keys {sorted(unknown)}")
        return Contract(tuple((c, cmap[c]) for c in CONCEPTS), tuple(elems))

    @staticmethod
    def all_any() -> "Contract":
        return Contract.make()

    def concept(self, name: str) -> str:
        for key, value in self.concepts:
            if key == name:
                return value
        return ANY

    def element_map(self) -> dict[str, frozenset[str]]:
        return dict(self.elements)

    def with_elements(self, **element_sets) -> "Contract":
        merged = {k: set(v) for k, v in self.elements}
        for key, value in element_sets.items():
            merged[key] = set(value)
        return Contract.make(dict(self.concepts), **{k: merged.get(k) for k in ELEMENT_KEYS if k in merged})

    def to_json(self) -> dict:
        doc: dict = {"concepts": {k: v for k, v in self.concepts}}
        elems = {}
        emap = self.element_map()
        for key in ELEMENT_KEYS:
            if key in emap:
                elems[key] = sorted(emap[key])
        doc["elements"] = elems
        return doc

    @staticmethod
    def from_json(doc: Mapping) -> "Contract":
        if not isinstance(doc, Mapping):
            raise GraphError(f"contract must be an object, got {type(doc).__name__}")
        concepts = doc.get("concepts") or {}
        elements = doc.get("elements") or {}
        kwargs = {}
        for key in ELEMENT_KEYS:
            if key in elements:
                kwargs[key] = elements[key]
        return Contract.make(concepts, **kwargs)


@dataclass(frozen=True)
class PatternCharacteristics:
    """Per-node modelling data.

    message_cardinality is the (consumed, produced) pair, e.g. (0, 1) for a
    message-generating source. capacity_mb is the memory footprint used by
    the placement model and must be positive.
    """

    message_cardinality: tuple[int, int] = (1, 1)
    access: str = "rw"  # "ro" | "rw"
    message_generating: bool = False
    conditions: tuple[str, ...] = ()
    program: Optional[str] = None
    capacity_mb: float = 64.0
    shareable: bool = True

    def __post_init__(self):
        n, k = self.message_cardinality
        if n < 0 or k < 0:
            raise GraphError("message cardinality must be non-negative")
        if self.access not in ("ro", "rw"):
            raise GraphError(f"access must be 'ro' or 'rw', got {self.access!r}")
        if not self.capacity_mb > 0:
            raise GraphError("capacity_mb must be positive")

    def to_json(self) -> dict:
        return {
            "mc": list(self.message_cardinality),
            "acc": self.access,
            "mg": self.message_generating,
            "cnd": list(self.conditions),
            "prg": self.program,
            "cap_mb": self.capacity_mb,
            "sh": self.shareable,
        }

    @staticmethod
    def from_json(doc: Mapping) -> "PatternCharacteristics":
        mc = doc.get("mc", [1, 1])
        if not (isinstance(mc, (list, tuple)) and len(mc) == 2):
            raise GraphError(f"char.mc must be a pair, got {mc!r}")
        return PatternCharacteristics(
            message_cardinality=(int(mc[0]), int(mc[1])),
            access=doc.get("acc", "rw"),
            message_generating=bool(doc.get("mg", False)),
            conditions=tuple(doc.get("cnd", ()) or ()),
            program=doc.get("prg"),
            capacity_mb=float(doc.get("cap_mb", 64.0)),
            shareable=bool(doc.get("sh", True)),
        )


@dataclass(frozen=True)
class PatternNode:
    node_id: str
    name: str
    type: PatternType
    char: PatternCharacteristics = field(default_factory=PatternCharacteristics)
    in_contracts: tuple[Contract, ...] = ()
    out_contracts: tuple[Contract, ...] = ()
    remote_link: Optional[str] = None

    @property
    def kind(self) -> Optional[str]:
        """Pattern kind from the ``kind:label`` naming convention."""
        if ":" in self.name:
            return self.name.split(":", 1)[0].strip().lower() or None
        return None

    @property
    def is_plumbing(self) -> bool:
        """Cross-graph glue created by decomposition (call or receiver).

        Only ``link://`` endpoints count; calls to real backends are
        ordinary patterns.
        """
        return (
            self.remote_link is not None
            and self.remote_link.startswith("link://")
            and self.type in (PatternType.EXTERNAL_CALL, PatternType.START)
        )


@dataclass(frozen=True)
class Violation:
    code: str
    ref: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def is_correct(self) -> bool:
        return not self.violations

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]

    def __str__(self) -> str:
        if self.is_correct:
            return "ok"
        return "; ".join(f"{v.code}[{v.ref}]: {v.message}" for v in self.violations)


class IPCG:
    """Immutable process graph. Nodes and edges keep insertion order."""

    def __init__(self, tenant: str, nodes: Sequence[PatternNode], edges: Sequence[tuple[str, str]]):
        self.tenant = tenant
        self.nodes = tuple(nodes)
        self.edges = tuple((str(a), str(b)) for a, b in edges)
        self._by_id = {n.node_id: n for n in self.nodes}
        if len(self._by_id) != len(self.nodes):
            raise GraphError("duplicate node ids")
        seen = set()
        for a, b in self.edges:
            if a not in self._by_id or b not in self._by_id:
                raise GraphError(f"edge ({a}, {b}) references unknown node")
            if a == b:
                raise GraphError(f"self-loop on {a}")
            if (a, b) in seen:
                raise GraphError(f"duplicate edge ({a}, {b})")
            seen.add((a, b))
        self._out: dict[str, list[str]] = {n.node_id: [] for n in self.nodes}
        self._in: dict[str, list[str]] = {n.node_id: [] for n in self.nodes}
        for a, b in self.edges:
            self._out[a].append(b)
            self._in[b].append(a)
        for n in self.nodes:
            if len(n.in_contracts) != len(self._in[n.node_id]):
                raise GraphError(
                    f"node {n.node_id}: {len(n.in_contracts)} in-contracts for "
                    f"{len(self._in[n.node_id])} incoming edges"
                )
            if len(n.out_contracts) != len(self._out[n.node_id]):
                raise GraphError(
                    f"node {n.node_id}: {len(n.out_contracts)} out-contracts for "
                    f"{len(self._out[n.node_id])} outgoing edges"
                )
            if n.char.conditions and n.type not in ROUTING_TYPES:
                raise GraphError(f"node {n.node_id}: only routing patterns may carry conditions")

    # -- lookups ---------------------------------------------------------

    def node(self, node_id: str) -> PatternNode:
        return self._by_id[node_id]

    def has_node(self, node_id: str) -> bool:
        return node_id in self._by_id

    def successors(self, node_id: str) -> list[str]:
        return list(self._out[node_id])

    def predecessors(self, node_id: str) -> list[str]:
        return list(self._in[node_id])

    def out_degree(self, node_id: str) -> int:
        return len(self._out[node_id])

    def in_degree(self, node_id: str) -> int:
        return len(self._in[node_id])

    def out_contract(self, a: str, b: str) -> Contract:
        """Contract the edge (a, b) carries on the producer side."""
        return self.node(a).out_contracts[self._out[a].index(b)]

    def in_contract(self, a: str, b: str) -> Contract:
        """Contract the edge (a, b) carries on the consumer side."""
        return self.node(b).in_contracts[self._in[b].index(a)]

    def __eq__(self, other):
        return (
            isinstance(other, IPCG)
            and self.tenant == other.tenant
            and self.nodes == other.nodes
            and self.edges == other.edges
        )

    def __repr__(self):
        return f"IPCG(tenant={self.tenant!r}, nodes={len(self.nodes)}, edges={len(self.edges)})"


# -- structural validation -------------------------------------------------


def _cardinality_ok(g: IPCG, n: PatternNode) -> Optional[str]:
    ind, outd = g.in_degree(n.node_id), g.out_degree(n.node_id)
    t = n.type
    if t in (PatternType.FORK, PatternType.CONDITION):
        if ind != 1 or outd < 2:
            return f"{t.value} requires in=1, out>1 (got in={ind}, out={outd})"
    elif t is PatternType.STRUCTURAL_JOIN:
        if ind < 2 or outd != 1:
            return f"structural-join requires in>1, out=1 (got in={ind}, out={outd})"
    elif t in (PatternType.MESSAGE_PROCESSOR, PatternType.MERGE):
        if ind != 1 or outd != 1:
            return f"{t.value} requires in=1, out=1 (got in={ind}, out={outd})"
    elif t is PatternType.EXTERNAL_CALL:
        linked = n.remote_link is not None
        # The remote link stands in for a forward edge; a terminal linked
        # call is the local end of the flow.
        ok = (ind == 1) and ((outd == 2 and not linked) or (outd in (0, 1) and linked))
        if not ok:
            return (
                "external-call requires in=1 and two outward flows "
                f"(got in={ind}, out={outd}, remote_link={'set' if linked else 'unset'})"
            )
    return None


def validate_iptg(g: IPCG) -> ValidationReport:
    """Structural correctness: start/end present, per-type cardinalities,
    weak connectivity, acyclicity. Contract matching is checked separately
    by :func:`validate_ipcg`."""
    out: list[Violation] = []

    starts = [n for n in g.nodes if n.type is PatternType.START]
    ends = [n for n in g.nodes if n.type is PatternType.END]
    terminal_calls = [
        n
        for n in g.nodes
        if n.type is PatternType.EXTERNAL_CALL
        and n.remote_link is not None
        and g.out_degree(n.node_id) == 0
    ]
    if not starts:
        out.append(Violation(MISSING_START, "", "no start pattern"))
    if not ends and not terminal_calls:
        out.append(Violation(MISSING_END, "", "no end pattern or terminal remote call"))

    for n in g.nodes:
        problem = _cardinality_ok(g, n)
        if problem:
            out.append(Violation(CARDINALITY, n.node_id, problem))

    # weak connectivity: union-find over undirected edges
    if g.nodes:
        parent = {n.node_id: n.node_id for n in g.nodes}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in g.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        components: dict[str, list[str]] = {}
        for n in g.nodes:
            components.setdefault(find(n.node_id), []).append(n.node_id)
        if len(components) > 1:
            groups = sorted((min(ids), ids) for ids in components.values())
            for head, ids in groups[1:]:
                out.append(
                    Violation(DISCONNECTED, head, f"component {{{', '.join(sorted(ids))}}} unreachable")
                )

    # cycles: report one violation per strongly connected component > 1
    for scc in _tarjan_sccs(g):
        if len(scc) > 1:
            head = min(scc)
            out.append(Violation(CYCLE, head, f"cycle through {{{', '.join(sorted(scc))}}}"))

    return ValidationReport(tuple(sorted(out, key=lambda v: (v.ref, v.code, v.message))))


def _tarjan_sccs(g: IPCG) -> list[list[str]]:
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    sccs: list[list[str]] = []
    counter = [0]

    for root in g.nodes:
        if root.node_id in index:
            continue
        # iterative Tarjan to survive deep chains
        work = [(root.node_id, iter(g.successors(root.node_id)))]
        index[root.node_id] = low[root.node_id] = counter[0]
        counter[0] += 1
        stack.append(root.node_id)
        on_stack.add(root.node_id)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.successors(w))))
                    advanced = True
                    break
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                scc = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    scc.append(w)
                    if w == v:
                        break
                sccs.append(scc)
    return sccs


def match_contracts(c: Contract, predecessors: Iterable[Contract]) -> bool:
    """Does in-contract ``c`` match the given predecessor out-contracts?

    Two clauses: every pinned concept (anything but ``any``) must be met
    exactly or left open by every predecessor, and every constrained element
    slot must equal the union of what the predecessors produce there.
    """
    preds = list(predecessors)
    for name, required in c.concepts:
        if required == ANY:
            continue
        for p in preds:
            offered = p.concept(name)
            if offered != ANY and offered != required:
                return False
    for key, required in c.elements:
        produced: set[str] = set()
        for p in preds:
            produced |= p.element_map().get(key, frozenset())
        if frozenset(produced) != required:
            return False
    return True


def validate_ipcg(g: IPCG) -> ValidationReport:
    """Full correctness: structure plus contract matching on every edge.

    Contracts are matched per incoming edge (the consumer-side contract of
    the edge against the producer-side contract of the same edge); start
    patterns are exempt. A node yields at most one contract violation.
    """
    violations = list(validate_iptg(g).violations)
    for n in g.nodes:
        if n.type is PatternType.START:
            continue
        ok = True
        for pred in g.predecessors(n.node_id):
            if not match_contracts(g.in_contract(pred, n.node_id), [g.out_contract(pred, n.node_id)]):
                ok = False
                break
        if not ok:
            violations.append(
                Violation(CONTRACT_MISMATCH, n.node_id, f"in-contract of {n.node_id} not satisfied by {pred}")
            )
    return ValidationReport(tuple(sorted(violations, key=lambda v: (v.ref, v.code, v.message))))


class InvalidGraph(ValueError):
    def __init__(self, report: ValidationReport):
        super().__init__(str(report))
        self.report = report


def _require_correct(g: IPCG) -> None:
    report = validate_iptg(g)
    if not report.is_correct:
        raise InvalidGraph(report)


def process_capacity(g: IPCG) -> float:
    """Total memory footprint in MB of a structurally correct process."""
    _require_correct(g)
    return sum(n.char.capacity_mb for n in g.nodes)


def process_shareable(g: IPCG) -> bool:
    """A process is shareable iff every pattern in it is."""
    _require_correct(g)
    return all(n.char.shareable for n in g.nodes)


# -- semantic equivalence ----------------------------------------------------


def _node_signature(g: IPCG, n: PatternNode):
    return (
        n.type.value,
        n.char,
        g.in_degree(n.node_id),
        g.out_degree(n.node_id),
        tuple(sorted((c.concepts, tuple(sorted(c.elements))) for c in n.in_contracts)),
        tuple(sorted((c.concepts, tuple(sorted(c.elements))) for c in n.out_contracts)),
    )


def isomorphic(g1: IPCG, g2: IPCG) -> bool:
    """Type-, characteristics- and contract-preserving graph isomorphism.

    Node ids and display names are not semantic and are ignored.
    """
    if len(g1.nodes) != len(g2.nodes) or len(g1.edges) != len(g2.edges):
        return False
    sig1: dict = {}
    sig2: dict = {}
    for n in g1.nodes:
        sig1.setdefault(_node_signature(g1, n), []).append(n.node_id)
    for n in g2.nodes:
        sig2.setdefault(_node_signature(g2, n), []).append(n.node_id)
    if set(sig1) != set(sig2) or any(len(sig1[s]) != len(sig2[s]) for s in sig1):
        return False

    candidates = {a: sig2[s] for s, ids in sig1.items() for a in ids}
    order = sorted((n.node_id for n in g1.nodes), key=lambda a: len(candidates[a]))
    mapping: dict[str, str] = {}
    used: set[str] = set()
    edges2 = set(g2.edges)

    def compatible(a: str, b: str) -> bool:
        for p in g1.predecessors(a):
            if p in mapping and (mapping[p], b) not in edges2:
                return False
        for s in g1.successors(a):
            if s in mapping and (b, mapping[s]) not in edges2:
                return False
        # edge contracts must travel with the edges
        for p in g1.predecessors(a):
            if p in mapping:
                if g1.out_contract(p, a) != g2.out_contract(mapping[p], b):
                    return False
                if g1.in_contract(p, a) != g2.in_contract(mapping[p], b):
                    return False
        for s in g1.successors(a):
            if s in mapping:
                if g1.out_contract(a, s) != g2.out_contract(b, mapping[s]):
                    return False
                if g1.in_contract(a, s) != g2.in_contract(b, mapping[s]):
                    return False
        return True

    def backtrack(i: int) -> bool:
        if i == len(order):
            return True
        a = order[i]
        for b in candidates[a]:
            if b in used or not compatible(a, b):
                continue
            mapping[a] = b
            used.add(b)
            if backtrack(i + 1):
                return True
            del mapping[a]
            used.discard(b)
        return False

    return backtrack(0)


def analyze_unused_elements(g: IPCG) -> dict[str, frozenset[str]]:
    """Per node: produced data elements no reachable successor ever requires.

    A node with a program expression is treated as consuming everything that
    reaches it, because the expression is opaque to the analysis.
    """
    # reachable sets via reverse topological sweep (graph is small; DFS per node is fine)
    memo: dict[str, set[str]] = {}

    def descendants(v: str) -> set[str]:
        if v in memo:
            return memo[v]
        acc: set[str] = set()
        stack = list(g.successors(v))
        while stack:
            w = stack.pop()
            if w in acc:
                continue
            acc.add(w)
            stack.extend(g.successors(w))
        memo[v] = acc
        return acc

    result: dict[str, frozenset[str]] = {}
    for n in g.nodes:
        produced: dict[tuple[str, str], bool] = {}
        for c in n.out_contracts:
            for key, ids in c.elements:
                for e in ids:
                    produced[(key, e)] = False
        if not produced:
            result[n.node_id] = frozenset()
            continue
        for w in descendants(n.node_id):
            consumer = g.node(w)
            if consumer.char.program is not None:
                for pair in produced:
                    produced[pair] = True
                break
            for c in consumer.in_contracts:
                for key, ids in c.elements:
                    for e in ids:
                        if (key, e) in produced:
                            produced[(key, e)] = True
        by_id: dict[str, list[bool]] = {}
        for (_, e), used in produced.items():
            by_id.setdefault(e, []).append(used)
        result[n.node_id] = frozenset(e for e, flags in by_id.items() if not any(flags))
    return result


# -- serialization -----------------------------------------------------------


def node_to_json(n: PatternNode) -> dict:
    return {
        "id": n.node_id,
        "name": n.name,
        "type": n.type.value,
        "char": n.char.to_json(),
        "in_contracts": [c.to_json() for c in n.in_contracts],
        "out_contracts": [c.to_json() for c in n.out_contracts],
        "remote_link": n.remote_link,
    }


def ipcg_to_dict(g: IPCG) -> dict:
    return {
        "tenant": g.tenant,
        "nodes": [node_to_json(n) for n in g.nodes],
        "edges": [[a, b] for a, b in g.edges],
    }


def serialize_ipcg(g: IPCG) -> str:
    return json.dumps(ipcg_to_dict(g), indent=2) + "\n"


def parse_ipcg(doc) -> IPCG:
    """Parse a graph document (dict or JSON text). Raises GraphError on
    malformed input; semantic problems are left to the validators."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, Mapping):
        raise GraphError("graph document must be an object")
    if "nodes" not in doc:
        raise GraphError("graph document lacks 'nodes'")
    tenant = doc.get("tenant", "")
    nodes = []
    for nd in doc["nodes"]:
        if "id" not in nd or "type" not in nd:
            raise GraphError("node lacks 'id' or 'type'")
        try:
            ptype = PatternType(nd["type"])
        except ValueError:
            raise GraphError(f"unknown pattern type {nd['type']!r}") from None
        nodes.append(
            PatternNode(
                node_id=str(nd["id"]),
                name=nd.get("name", str(nd["id"])),
                type=ptype,
                char=PatternCharacteristics.from_json(nd.get("char", {})),
                in_contracts=tuple(Contract.from_json(c) for c in nd.get("in_contracts", ())),
                out_contracts=tuple(Contract.from_json(c) for c in nd.get("out_contracts", ())),
                remote_link=nd.get("remote_link"),
            )
        )
    edges = [(e[0], e[1]) for e in doc.get("edges", ())]
    return IPCG(tenant=str(tenant), nodes=nodes, edges=edges)


# -- construction helper -----------------------------------------------------


class GraphBuilder:
    """Mutable helper that keeps edge/contract alignment straight.

    Contracts are attached to edges; freeze() distributes them into the
    positional per-node lists in edge order.
    """

    def __init__(self, tenant: str):
        self.tenant = tenant
        self._nodes: dict[str, dict] = {}
        self._edges: list[tuple[str, str]] = []
        self._carry: dict[tuple[str, str], tuple[Contract, Contract]] = {}

    @staticmethod
    def from_graph(g: IPCG) -> "GraphBuilder":
        b = GraphBuilder(g.tenant)
        for n in g.nodes:
            b.add_node(n.node_id, n.name, n.type, n.char, remote_link=n.remote_link)
        for a, c in g.edges:
            b.add_edge(a, c, out_contract=g.out_contract(a, c), in_contract=g.in_contract(a, c))
        return b

    def add_node(self, node_id, name, ptype, char, remote_link=None):
        if node_id in self._nodes:
            raise GraphError(f"node {node_id} already present")
        self._nodes[node_id] = {
            "name": name,
            "type": ptype,
            "char": char,
            "remote_link": remote_link,
        }
        return node_id

    def has_node(self, node_id) -> bool:
        return node_id in self._nodes

    def remove_node(self, node_id) -> None:
        del self._nodes[node_id]
        for a, b in list(self._edges):
            if node_id in (a, b):
                self.remove_edge(a, b)

    def update_node(self, node_id, **fields) -> None:
        self._nodes[node_id].update(fields)

    def node_info(self, node_id) -> dict:
        return self._nodes[node_id]

    def add_edge(self, a, b, contract: Optional[Contract] = None, out_contract=None, in_contract=None):
        if (a, b) in self._carry:
            raise GraphError(f"duplicate edge ({a}, {b})")
        out_c = out_contract if out_contract is not None else contract
        in_c = in_contract if in_contract is not None else contract
        if out_c is None or in_c is None:
            raise GraphError(f"edge ({a}, {b}) needs contracts")
        self._edges.append((a, b))
        self._carry[(a, b)] = (out_c, in_c)

    def remove_edge(self, a, b) -> tuple[Contract, Contract]:
        self._edges.remove((a, b))
        return self._carry.pop((a, b))

    def edge_contracts(self, a, b) -> tuple[Contract, Contract]:
        return self._carry[(a, b)]

    def edges(self) -> list[tuple[str, str]]:
        return list(self._edges)

    def node_ids(self) -> list[str]:
        return list(self._nodes)

    def successors(self, node_id) -> list[str]:
        return [b for a, b in self._edges if a == node_id]

    def predecessors(self, node_id) -> list[str]:
        return [a for a, b in self._edges if b == node_id]

    def fresh_id(self, prefix: str) -> str:
        k = 1
        while f"{prefix}{k}" in self._nodes:
            k += 1
        return f"{prefix}{k}"

    def freeze(self, tenant: Optional[str] = None) -> IPCG:
        nodes = []
        for node_id, info in self._nodes.items():
            ins = [self._carry[(a, b)][1] for a, b in self._edges if b == node_id]
            outs = [self._carry[(a, b)][0] for a, b in self._edges if a == node_id]
            nodes.append(
                PatternNode(
                    node_id=node_id,
                    name=info["name"],
                    type=info["type"],
                    char=info["char"],
                    in_contracts=tuple(ins),
                    out_contracts=tuple(outs),
                    remote_link=info.get("remote_link"),
                )
            )
        return IPCG(tenant if tenant is not None else self.tenant, nodes, self._edges)

    def components(self) -> list[list[str]]:
        """Weakly connected components, each sorted, ordered by smallest id."""
        parent = {v: v for v in self._nodes}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self._edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups: dict[str, list[str]] = {}
        for v in self._nodes:
            groups.setdefault(find(v), []).append(v)
        comps = [sorted(ids) for ids in groups.values()]
        comps.sort(key=lambda ids: ids[0])
        return comps

    def split_components(self) -> "list[GraphBuilder]":
        out = []
        for ids in self.components():
            keep = set(ids)
            b = GraphBuilder(self.tenant)
            for node_id in self._nodes:
                if node_id in keep:
                    info = self._nodes[node_id]
                    b.add_node(node_id, info["name"], info["type"], info["char"], remote_link=info.get("remote_link"))
            for a, c in self._edges:
                if a in keep:
                    oc, ic = self._carry[(a, c)]
                    b.add_edge(a, c, out_contract=oc, in_contract=ic)
            out.append(b)
        return out
