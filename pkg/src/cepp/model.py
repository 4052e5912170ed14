"""Container placement model: items, variants, feasibility, exact solver.

Costs are EUR per month and are carried as integer cents everywhere inside
the package; floats only appear at the JSON boundary. A placement assigns
every item to exactly one container and every container (used or not) to
exactly one catalog variant; unused containers sit on the zero variant.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .graph import ValidationReport, Violation

# Above this many items the exact solver refuses and callers should fall
# back to the local search (override with allow_large for benchmarks).
EXACT_ITEM_LIMIT = 20

C1 = "C1"  # every item in exactly one container
C2 = "C2"  # every container on exactly one variant
C3 = "C3"  # container load within variant capacity
C4 = "C4"  # no conflicting pair co-located
C5 = "C5"  # items per container bounded


def to_cents(eur: float) -> int:
    return int(round(eur * 100))


def format_eur(cents: int) -> str:
    sign = "-" if cents < 0 else ""
    cents = abs(cents)
    return f"{sign}{cents // 100}.{cents % 100:02d}"


class Infeasible(Exception):
    """No feasible placement exists under the given bounds."""


class TooLarge(Exception):
    """Instance exceeds the exact solver's item limit."""


@dataclass(frozen=True)
class ContainerVariant:
    variant_id: str
    vendor: str
    capacity_mb: float
    cost_cents: int
    cpu: Optional[float] = None  # parsed and preserved, not priced

    def __post_init__(self):
        if self.capacity_mb < 0 or self.cost_cents < 0:
            raise ValueError("variant capacity and cost must be non-negative")

    @property
    def is_zero(self) -> bool:
        return self.capacity_mb == 0 and self.cost_cents == 0

    def to_json(self) -> dict:
        doc = {
            "id": self.variant_id,
            "vendor": self.vendor,
            "cap_mb": self.capacity_mb,
            "cost_eur_mo": self.cost_cents / 100.0,
        }
        if self.cpu is not None:
            doc["cpu"] = self.cpu
        return doc


ZERO_VARIANT = ContainerVariant("zero", "none", 0.0, 0)


@dataclass(frozen=True)
class PlacementItem:
    item_id: str
    capacity_mb: float
    tenant: str
    shareable: bool
    origin: Optional[str] = None  # id of the process graph this came from

    def to_json(self) -> dict:
        return {
            "id": self.item_id,
            "cap_mb": self.capacity_mb,
            "tenant": self.tenant,
            "shareable": self.shareable,
        }

    @staticmethod
    def from_json(doc: Mapping) -> "PlacementItem":
        return PlacementItem(
            item_id=str(doc["id"]),
            capacity_mb=float(doc["cap_mb"]),
            tenant=str(doc["tenant"]),
            shareable=bool(doc.get("shareable", True)),
            origin=doc.get("origin"),
        )


def conflicts(a: PlacementItem, b: PlacementItem) -> bool:
    """Two items conflict iff they belong to different tenants and at least
    one of them is non-shareable."""
    return a.tenant != b.tenant and not (a.shareable and b.shareable)


@dataclass(frozen=True)
class ProblemInstance:
    items: tuple[PlacementItem, ...]
    variants: tuple[ContainerVariant, ...]  # zero variant first, then ascending capacity
    max_containers: int
    max_items_per_container: int

    @staticmethod
    def build(
        items: Iterable[PlacementItem],
        variants: Iterable[ContainerVariant],
        max_containers: Optional[int] = None,
        max_items_per_container: Optional[int] = None,
    ) -> "ProblemInstance":
        items = tuple(items)
        ordered = sorted(
            (v for v in variants if not v.is_zero),
            key=lambda v: (v.capacity_mb, v.cost_cents, v.variant_id),
        )
        variants = (ZERO_VARIANT,) + tuple(ordered)
        if max_items_per_container is None:
            max_items_per_container = max(1, len(items))
        if max_containers is None:
            max_containers = default_container_bound_for(items, variants, max_items_per_container)
        if max_containers < 1:
            raise ValueError("max_containers must be >= 1")
        return ProblemInstance(items, variants, max_containers, max_items_per_container)

    def item(self, item_id: str) -> PlacementItem:
        for it in self.items:
            if it.item_id == item_id:
                return it
        raise KeyError(item_id)


@dataclass(frozen=True)
class Placement:
    """item -> container index, container index -> variant index."""

    item_to_container: Mapping[str, int]
    container_to_variant: Mapping[int, int]

    def variant_of(self, inst: ProblemInstance, j: int) -> ContainerVariant:
        return inst.variants[self.container_to_variant[j]]


def check_feasible(p: Placement, inst: ProblemInstance) -> ValidationReport:
    out: list[Violation] = []
    loads: dict[int, float] = {j: 0.0 for j in range(inst.max_containers)}
    members: dict[int, list[PlacementItem]] = {j: [] for j in range(inst.max_containers)}

    for it in inst.items:
        j = p.item_to_container.get(it.item_id)
        if j is None or not (0 <= j < inst.max_containers):
            out.append(Violation(C1, it.item_id, f"item not assigned to a container in 0..{inst.max_containers - 1}"))
            continue
        loads[j] += it.capacity_mb
        members[j].append(it)

    for j in range(inst.max_containers):
        n = p.container_to_variant.get(j)
        if n is None or not (0 <= n < len(inst.variants)):
            out.append(Violation(C2, str(j), "container not assigned a catalog variant"))
            continue
        variant = inst.variants[n]
        if loads[j] > variant.capacity_mb:
            out.append(
                Violation(C3, str(j), f"load {loads[j]:g} MB exceeds variant {variant.variant_id} ({variant.capacity_mb:g} MB)")
            )
        if len(members[j]) > inst.max_items_per_container:
            out.append(Violation(C5, str(j), f"{len(members[j])} items exceed per-container limit {inst.max_items_per_container}"))

    for j, group in members.items():
        for x in range(len(group)):
            for y in range(x + 1, len(group)):
                if conflicts(group[x], group[y]):
                    out.append(
                        Violation(C4, f"{group[x].item_id}+{group[y].item_id}", f"conflicting items co-located in container {j}")
                    )

    return ValidationReport(tuple(sorted(out, key=lambda v: (v.code, v.ref))))


def total_cost(p: Placement, inst: ProblemInstance) -> int:
    """Sum of the chosen variants' costs, in cents. Requires C2 to hold."""
    cents = 0
    for j in range(inst.max_containers):
        if j not in p.container_to_variant:
            raise ValueError(f"container {j} has no variant (C2 violated)")
        cents += inst.variants[p.container_to_variant[j]].cost_cents
    return cents


# -- helpers shared by solver and heuristic ---------------------------------


def cheapest_fit_index(inst_variants: Sequence[ContainerVariant], load: float) -> Optional[int]:
    """Index of the cheapest variant with capacity >= load (zero for 0)."""
    if load <= 0:
        for n, v in enumerate(inst_variants):
            if v.is_zero:
                return n
    best = None
    best_cost = None
    for n, v in enumerate(inst_variants):
        if v.is_zero and load > 0:
            continue
        if v.capacity_mb >= load and (best_cost is None or v.cost_cents < best_cost):
            best, best_cost = n, v.cost_cents
    return best


def default_container_bound_for(
    items: Sequence[PlacementItem],
    variants: Sequence[ContainerVariant],
    max_items_per_container: int,
) -> int:
    """Container budget: containers used by a first-fit-decreasing pass over
    the conflict groups, plus one slack. Guarantees the initial heuristic
    solution fits in the budget."""
    from .heuristic import ffd_container_count  # local import, avoids cycle

    return ffd_container_count(items, variants, max_items_per_container) + 1


def default_container_bound(inst: ProblemInstance) -> int:
    return default_container_bound_for(inst.items, inst.variants, inst.max_items_per_container)


def hosting_baseline(inst: ProblemInstance) -> int:
    """Cost of the naive one-container-per-tenant hosting, in cents."""
    per_tenant: dict[str, float] = {}
    for it in inst.items:
        per_tenant[it.tenant] = per_tenant.get(it.tenant, 0.0) + it.capacity_mb
    cents = 0
    for tenant in sorted(per_tenant):
        n = cheapest_fit_index(inst.variants, per_tenant[tenant])
        if n is None:
            raise Infeasible(f"tenant {tenant} does not fit any variant")
        cents += inst.variants[n].cost_cents
    return cents


# -- exact solver ------------------------------------------------------------


def solve_exact(
    inst: ProblemInstance,
    budget_s: Optional[float] = None,
    allow_large: bool = False,
) -> tuple[Placement, bool]:
    """Branch-and-bound over item assignments, optimal when it completes.

    Returns (placement, proven_optimal). proven_optimal is False when the
    time budget expired first; the incumbent returned is still feasible.
    Raises TooLarge beyond EXACT_ITEM_LIMIT items (unless allow_large) and
    Infeasible when no assignment satisfies the constraints.
    """
    if not allow_large and len(inst.items) > EXACT_ITEM_LIMIT:
        raise TooLarge(
            f"{len(inst.items)} items exceed the exact limit of {EXACT_ITEM_LIMIT}; use the heuristic"
        )

    C = inst.max_containers
    Q = inst.max_items_per_container
    variants = inst.variants
    positive = [v for v in variants if not v.is_zero]
    if not positive and inst.items:
        raise Infeasible("catalog has no usable variant")
    max_cap = max((v.capacity_mb for v in positive), default=0.0)
    min_cost_per_mb = min(
        (v.cost_cents / v.capacity_mb for v in positive if v.capacity_mb > 0), default=0.0
    )

    # items in descending capacity: big rocks first prunes earlier
    order = sorted(inst.items, key=lambda it: (-it.capacity_mb, it.item_id))
    for it in order:
        if it.capacity_mb > max_cap:
            raise Infeasible(f"item {it.item_id} ({it.capacity_mb:g} MB) fits no variant")

    fit_cache: dict[float, int] = {}

    def fit_cost(load: float) -> int:
        if load <= 0:
            return 0
        got = fit_cache.get(load)
        if got is None:
            n = cheapest_fit_index(variants, load)
            got = variants[n].cost_cents if n is not None else 1 << 60
            fit_cache[load] = got
        return got

    # incumbent: seed with the first-fit-decreasing heuristic when it fits the bound
    from .heuristic import ffd_placement

    best_assign: Optional[dict[str, int]] = None
    best_cost = 1 << 60
    seed = ffd_placement(inst)
    if seed is not None:
        seed_assign, seed_cost = seed
        if max(seed_assign.values(), default=-1) < C:
            best_assign, best_cost = dict(seed_assign), seed_cost

    loads = [0.0] * C
    counts = [0] * C
    tenants: list[set[str]] = [set() for _ in range(C)]
    nonshare_tenants: list[set] = [set() for _ in range(C)]
    assign: dict[str, int] = {}
    deadline = time.monotonic() + budget_s if budget_s is not None else None
    timed_out = False
    total_load = sum(it.capacity_mb for it in order)

    def lower_bound() -> int:
        used = sum(fit_cost(load) for load in loads if load > 0)
        volume = int(math.ceil(total_load * min_cost_per_mb)) if min_cost_per_mb else 0
        return max(used, volume)

    def compatible(it: PlacementItem, j: int) -> bool:
        if counts[j] >= Q:
            return False
        if it.shareable:
            other_nonshare = nonshare_tenants[j] - {it.tenant}
            if other_nonshare:
                return False
        else:
            if tenants[j] - {it.tenant}:
                return False
        return True

    def descend(i: int, used_hi: int) -> None:
        nonlocal best_assign, best_cost, timed_out
        if timed_out or (deadline is not None and time.monotonic() > deadline):
            timed_out = True
            return
        if i == len(order):
            cost = sum(fit_cost(load) for load in loads if load > 0)
            if cost < best_cost:
                best_cost = cost
                best_assign = dict(assign)
            return
        if lower_bound() >= best_cost:
            return
        it = order[i]
        # symmetry breaking: at most one brand-new container may be opened
        for j in range(min(used_hi + 1, C - 1) + 1):
            if loads[j] + it.capacity_mb > max_cap or not compatible(it, j):
                continue
            had_tenant = it.tenant in tenants[j]
            had_nonshare = it.tenant in nonshare_tenants[j]
            loads[j] += it.capacity_mb
            counts[j] += 1
            tenants[j].add(it.tenant)
            if not it.shareable:
                nonshare_tenants[j].add(it.tenant)
            assign[it.item_id] = j
            descend(i + 1, max(used_hi, j))
            del assign[it.item_id]
            loads[j] -= it.capacity_mb
            counts[j] -= 1
            if not had_tenant:
                tenants[j].discard(it.tenant)
            if not it.shareable and not had_nonshare:
                nonshare_tenants[j].discard(it.tenant)

    descend(0, -1)

    if best_assign is None:
        if timed_out:
            raise Infeasible("no feasible placement found within the time budget")
        raise Infeasible(f"no feasible placement within {C} containers")

    container_loads: dict[int, float] = {j: 0.0 for j in range(C)}
    for it in inst.items:
        container_loads[best_assign[it.item_id]] += it.capacity_mb
    container_to_variant = {}
    for j in range(C):
        n = cheapest_fit_index(variants, container_loads[j])
        container_to_variant[j] = n if n is not None else 0
    placement = Placement(dict(best_assign), container_to_variant)
    return placement, not timed_out


# -- LP text export ----------------------------------------------------------


def _coeff(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def export_lp(inst: ProblemInstance) -> str:
    """Linear program text (CPLEX LP format) for the placement instance.

    Binaries: x_{i}_{j} assigns item i to container j, y_{n}_{j} picks
    variant n for container j. Items and variants are indexed in instance
    order (variant 0 is the zero variant).
    """
    items = inst.items
    variants = inst.variants
    C = inst.max_containers
    lines = ["Minimize", " obj:"]
    terms = []
    for j in range(C):
        for n, v in enumerate(variants):
            if v.cost_cents:
                terms.append(f"{format_eur(v.cost_cents)} y_{n}_{j}")
    lines[1] = " obj: " + (" + ".join(terms) if terms else "0 y_0_0")

    rows = ["Subject To"]
    for i, _ in enumerate(items):
        lhs = " + ".join(f"x_{i}_{j}" for j in range(C))
        rows.append(f" c1_{i}: {lhs} = 1")
    for j in range(C):
        lhs = " + ".join(f"y_{n}_{j}" for n in range(len(variants)))
        rows.append(f" c2_{j}: {lhs} = 1")
    for j in range(C):
        parts = [f"{_coeff(it.capacity_mb)} x_{i}_{j}" for i, it in enumerate(items) if it.capacity_mb]
        for n, v in enumerate(variants):
            if v.capacity_mb:
                parts.append(f"- {_coeff(v.capacity_mb)} y_{n}_{j}")
        if parts:
            lhs = " ".join(p if k == 0 or p.startswith("-") else "+ " + p for k, p in enumerate(parts))
            rows.append(f" c3_{j}: {lhs} <= 0")
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            if conflicts(items[a], items[b]):
                for j in range(C):
                    rows.append(f" c4_{a}_{b}_{j}: x_{a}_{j} + x_{b}_{j} <= 1")
    for j in range(C):
        lhs = " + ".join(f"x_{i}_{j}" for i in range(len(items)))
        if lhs:
            rows.append(f" c5_{j}: {lhs} <= {inst.max_items_per_container}")

    binaries = ["Binary"]
    for i in range(len(items)):
        for j in range(C):
            binaries.append(f" x_{i}_{j}")
    for n in range(len(variants)):
        for j in range(C):
            binaries.append(f" y_{n}_{j}")

    return "\n".join(lines + rows + binaries + ["End"]) + "\n"


# -- placement JSON ----------------------------------------------------------


def placement_to_json(p: Placement, inst: ProblemInstance, meta: Optional[dict] = None) -> str:
    """Stable, byte-reproducible report of a placement."""
    containers = []
    members: dict[int, list[PlacementItem]] = {}
    for it in inst.items:
        members.setdefault(p.item_to_container[it.item_id], []).append(it)
    for j in range(inst.max_containers):
        v = inst.variants[p.container_to_variant[j]]
        group = sorted(members.get(j, ()), key=lambda it: it.item_id)
        containers.append(
            {
                "id": j,
                "variant": v.variant_id,
                "vendor": v.vendor,
                "cap_mb": v.capacity_mb,
                "cost_eur_mo": v.cost_cents / 100.0,
                "items": [it.item_id for it in group],
                "load_mb": sum(it.capacity_mb for it in group),
            }
        )
    doc = {
        "containers": containers,
        "total_eur_mo": total_cost(p, inst) / 100.0,
    }
    if meta:
        doc.update(meta)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
