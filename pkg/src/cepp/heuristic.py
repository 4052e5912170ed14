"""First-fit-decreasing construction and randomized local search.

The construction decomposes the instance into conflict-free sub-problems
(one group per tenant's non-shareable items, one group for all shareable
items), sorts items by descending capacity and fills group-local containers,
opening the most cost-efficient variant that fits when nothing has room.
Containers keep the group type they were created with, so conflicts can
never be introduced later: the search only ever moves items between
containers that are legal for them.

The search loops over a fixed transformation cycle (move, swap, shrink by
default). A candidate is accepted iff it stays feasible and does not raise
the cost; every attempt, including no-ops, counts against the budget.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .model import (
    ContainerVariant,
    Infeasible,
    Placement,
    PlacementItem,
    ProblemInstance,
    cheapest_fit_index,
)
from .rng import SplitMix64

SHARED = "shared"


class EmptyCatalog(Exception):
    pass


class ItemTooLarge(Exception):
    pass


def efficiency_order(variants: Sequence[ContainerVariant]) -> list[int]:
    """Variant indices by ascending cost per MB; ties prefer the smaller
    capacity, then the variant id. The zero variant is excluded."""
    idx = [n for n, v in enumerate(variants) if not v.is_zero]
    if not idx:
        raise EmptyCatalog("no positive-capacity variant available")
    idx.sort(key=lambda n: (variants[n].cost_cents / variants[n].capacity_mb, variants[n].capacity_mb, variants[n].variant_id))
    return idx


def prune_dominated_variants(variants: Sequence[ContainerVariant]) -> list[ContainerVariant]:
    """Drop every variant beaten by another on both capacity and cost.

    A variant is dominated when some other variant offers at least the
    capacity for at most the cost, strictly better in one of the two (equal
    twins are deduplicated by id). The zero variant is always kept.
    """
    kept = []
    for v in variants:
        if v.is_zero:
            kept.append(v)
            continue
        dominated = False
        for w in variants:
            if w is v or w.is_zero:
                continue
            if w.capacity_mb >= v.capacity_mb and w.cost_cents <= v.cost_cents:
                strict = w.capacity_mb > v.capacity_mb or w.cost_cents < v.cost_cents
                twin = (
                    w.capacity_mb == v.capacity_mb
                    and w.cost_cents == v.cost_cents
                    and w.variant_id < v.variant_id
                )
                if strict or twin:
                    dominated = True
                    break
        if not dominated:
            kept.append(v)
    return kept


# -- containers and search state ---------------------------------------------


@dataclass
class Container:
    cid: int
    group: str  # SHARED or the owning tenant
    variant_index: int
    items: set[str] = field(default_factory=set)
    load_mb: float = 0.0


class SearchState:
    """Mutable placement under search, with incremental load/cost caches."""

    def __init__(self, inst: ProblemInstance):
        self.inst = inst
        self.containers: list[Container] = []
        self.item_container: dict[str, int] = {}
        self.cost_cents = 0
        self._items = {it.item_id: it for it in inst.items}

    def open_container(self, group: str, variant_index: int) -> Container:
        c = Container(cid=len(self.containers), group=group, variant_index=variant_index)
        self.containers.append(c)
        self.cost_cents += self.inst.variants[variant_index].cost_cents
        return c

    def place(self, item: PlacementItem, c: Container) -> None:
        c.items.add(item.item_id)
        c.load_mb += item.capacity_mb
        self.item_container[item.item_id] = c.cid

    def unplace(self, item: PlacementItem, c: Container) -> None:
        c.items.remove(item.item_id)
        c.load_mb -= item.capacity_mb
        del self.item_container[item.item_id]

    def set_variant(self, c: Container, variant_index: int) -> None:
        self.cost_cents += (
            self.inst.variants[variant_index].cost_cents
            - self.inst.variants[c.variant_index].cost_cents
        )
        c.variant_index = variant_index

    def capacity_ok(self, c: Container) -> bool:
        return c.load_mb <= self.inst.variants[c.variant_index].capacity_mb and len(
            c.items
        ) <= self.inst.max_items_per_container

    def legal_targets(self, item: PlacementItem) -> list[Container]:
        """Containers this item may live in: its tenant's exclusive ones,
        plus the shared ones when the item is shareable."""
        out = []
        for c in self.containers:
            if c.group == item.tenant or (item.shareable and c.group == SHARED):
                out.append(c)
        return out

    def item(self, item_id: str) -> PlacementItem:
        return self._items[item_id]

    def verify(self) -> None:
        """Full recomputation of the caches; raises on drift. Used by the
        property-check mode of the search."""
        cost = 0
        for c in self.containers:
            load = sum(self._items[i].capacity_mb for i in c.items)
            if abs(load - c.load_mb) > 1e-9:
                raise AssertionError(f"container {c.cid} load cache drifted")
            if not self.capacity_ok(c):
                raise AssertionError(f"container {c.cid} over capacity")
            for i in c.items:
                it = self._items[i]
                if not (c.group == it.tenant or (it.shareable and c.group == SHARED)):
                    raise AssertionError(f"item {i} in illegal container {c.cid}")
            cost += self.inst.variants[c.variant_index].cost_cents
        if cost != self.cost_cents:
            raise AssertionError("cost cache drifted")

    def to_placement(self) -> Placement:
        if len(self.containers) > self.inst.max_containers:
            raise Infeasible(
                f"search state uses {len(self.containers)} containers, instance allows {self.inst.max_containers}"
            )
        zero = 0  # zero variant is index 0 by instance construction
        container_to_variant = {c.cid: c.variant_index for c in self.containers}
        for j in range(len(self.containers), self.inst.max_containers):
            container_to_variant[j] = zero
        return Placement(dict(self.item_container), container_to_variant)


# -- construction ------------------------------------------------------------


def _conflict_groups(items: Sequence[PlacementItem]) -> list[tuple[str, list[PlacementItem]]]:
    groups: dict[str, list[PlacementItem]] = {}
    shared: list[PlacementItem] = []
    for it in items:
        if it.shareable:
            shared.append(it)
        else:
            groups.setdefault(it.tenant, []).append(it)
    ordered: list[tuple[str, list[PlacementItem]]] = [
        (tenant, groups[tenant]) for tenant in sorted(groups)
    ]
    ordered.append((SHARED, shared))
    return ordered


def ffd_initial(inst: ProblemInstance) -> SearchState:
    """First-fit decreasing over the conflict-free sub-problems."""
    state = SearchState(inst)
    order = efficiency_order(inst.variants)
    for group, members in _conflict_groups(inst.items):
        members = sorted(members, key=lambda it: (-it.capacity_mb, it.item_id))
        local: list[Container] = []
        for it in members:
            placed = False
            for c in local:
                if (
                    c.load_mb + it.capacity_mb <= inst.variants[c.variant_index].capacity_mb
                    and len(c.items) < inst.max_items_per_container
                ):
                    state.place(it, c)
                    placed = True
                    break
            if placed:
                continue
            opened = None
            for n in order:
                if inst.variants[n].capacity_mb >= it.capacity_mb:
                    opened = state.open_container(group, n)
                    break
            if opened is None:
                raise ItemTooLarge(f"item {it.item_id} ({it.capacity_mb:g} MB) fits no variant")
            state.place(it, opened)
            local.append(opened)
    return state


def ffd_container_count(
    items: Sequence[PlacementItem],
    variants: Sequence[ContainerVariant],
    max_items_per_container: int,
) -> int:
    inst = ProblemInstance(
        items=tuple(items),
        variants=tuple(variants),
        max_containers=max(1, len(items)),
        max_items_per_container=max_items_per_container,
    )
    return len(ffd_initial(inst).containers)


def ffd_placement(inst: ProblemInstance) -> Optional[tuple[dict[str, int], int]]:
    """(assignment, cost) of the FFD solution with per-container cheapest
    fitting variants, or None when some item fits no variant."""
    try:
        state = ffd_initial(inst)
    except (ItemTooLarge, EmptyCatalog):
        return None
    for c in state.containers:
        n = cheapest_fit_index(inst.variants, c.load_mb)
        if n is not None:
            state.set_variant(c, n)
    return dict(state.item_container), state.cost_cents


# -- transformations ---------------------------------------------------------


@dataclass(frozen=True)
class MoveDelta:
    item_id: str
    src: int
    dst: int


@dataclass(frozen=True)
class ShrinkDelta:
    cid: int
    old_variant: int
    new_variant: int


@dataclass(frozen=True)
class SwapDelta:
    item_a: str
    item_b: str
    cid_a: int
    cid_b: int


Delta = MoveDelta | ShrinkDelta | SwapDelta


def transform_move(state: SearchState, rng: SplitMix64) -> Optional[MoveDelta]:
    """Random item to a random legal target container; None when the item
    has no other legal container (a no-op attempt)."""
    if not state.inst.items:
        return None
    item = state.item(rng.choice(state.inst.items).item_id)
    src = state.item_container[item.item_id]
    targets = [c for c in state.legal_targets(item) if c.cid != src]
    if not targets:
        return None
    dst = targets[rng.randrange(len(targets))]
    return MoveDelta(item.item_id, src, dst.cid)


def transform_shrink(state: SearchState, rng: SplitMix64) -> Optional[ShrinkDelta]:
    """Random container one variant step down the size-ordered catalog;
    containers already on the zero variant are skipped."""
    if not state.containers:
        return None
    c = state.containers[rng.randrange(len(state.containers))]
    if c.variant_index == 0:
        return None
    return ShrinkDelta(c.cid, c.variant_index, c.variant_index - 1)


def transform_swap(state: SearchState, rng: SplitMix64) -> Optional[SwapDelta]:
    """Exchange two random items across containers. Legal only when both
    containers are shared or both are exclusive to the same tenant."""
    items = state.inst.items
    if len(items) < 2:
        return None
    a = items[rng.randrange(len(items))]
    b = items[rng.randrange(len(items))]
    ca = state.item_container[a.item_id]
    cb = state.item_container[b.item_id]
    if a.item_id == b.item_id or ca == cb:
        return None
    ga = state.containers[ca].group
    gb = state.containers[cb].group
    if ga != gb:
        return None
    # same group means samely-typed containers; exclusive groups carry the tenant
    return SwapDelta(a.item_id, b.item_id, ca, cb)


def _apply(state: SearchState, delta: Delta) -> None:
    if isinstance(delta, MoveDelta):
        it = state.item(delta.item_id)
        state.unplace(it, state.containers[delta.src])
        state.place(it, state.containers[delta.dst])
    elif isinstance(delta, ShrinkDelta):
        state.set_variant(state.containers[delta.cid], delta.new_variant)
    else:
        a, b = state.item(delta.item_a), state.item(delta.item_b)
        state.unplace(a, state.containers[delta.cid_a])
        state.unplace(b, state.containers[delta.cid_b])
        state.place(a, state.containers[delta.cid_b])
        state.place(b, state.containers[delta.cid_a])


def _revert(state: SearchState, delta: Delta) -> None:
    if isinstance(delta, MoveDelta):
        _apply(state, MoveDelta(delta.item_id, delta.dst, delta.src))
    elif isinstance(delta, ShrinkDelta):
        state.set_variant(state.containers[delta.cid], delta.old_variant)
    else:
        _apply(state, SwapDelta(delta.item_a, delta.item_b, delta.cid_b, delta.cid_a))


def _affected(delta: Delta) -> tuple[int, ...]:
    if isinstance(delta, MoveDelta):
        return (delta.src, delta.dst)
    if isinstance(delta, ShrinkDelta):
        return (delta.cid,)
    return (delta.cid_a, delta.cid_b)


# -- the search --------------------------------------------------------------


TRANSFORMS = {
    "move": transform_move,
    "swap": transform_swap,
    "shrink": transform_shrink,
}


@dataclass(frozen=True)
class SearchConfig:
    max_transformations: int = 10_000
    rng_seed: int = 1
    transformation_cycle: tuple[str, ...] = ("move", "swap", "shrink")
    property_check: bool = False  # full state verification after each acceptance

    def __post_init__(self):
        for name in self.transformation_cycle:
            if name not in TRANSFORMS:
                raise ValueError(f"unknown transformation {name!r}")


def local_search(inst: ProblemInstance, cfg: SearchConfig = SearchConfig()) -> tuple[Placement, int]:
    """FFD construction followed by budgeted hill descent.

    Deterministic for a given (instance, seed, config). Returns the final
    placement and its cost in cents; the cost never exceeds the initial
    FFD solution's cost.
    """
    state = ffd_initial(inst)
    rng = SplitMix64(cfg.rng_seed)
    cycle = cfg.transformation_cycle
    attempts = 0
    while attempts < cfg.max_transformations:
        kind = cycle[attempts % len(cycle)]
        attempts += 1
        delta = TRANSFORMS[kind](state, rng)
        if delta is None:
            continue
        cost_before = state.cost_cents
        _apply(state, delta)
        ok = state.cost_cents <= cost_before
        if ok:
            for cid in _affected(delta):
                if not state.capacity_ok(state.containers[cid]):
                    ok = False
                    break
        if not ok:
            _revert(state, delta)
            continue
        if cfg.property_check:
            state.verify()
    return state.to_placement(), state.cost_cents
