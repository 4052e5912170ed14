"""Independent exhaustive references for small placement instances.

Nothing here shares logic with the production solvers: placements are found
by enumerating every set partition of the items (Bell numbers — fine up to
~10 items), checking each block directly against the co-location rules, and
pricing blocks at their cheapest fitting variant. Slow and obviously
correct, which is the point.
"""
from __future__ import annotations

from typing import Iterator, Optional, Sequence

from cepp.model import Infeasible, PlacementItem, ProblemInstance


def partitions(items: list) -> Iterator[list[list]]:
    """Every partition of ``items`` into non-empty blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [first]] + part[i + 1 :]
        yield [[first]] + part


def _block_ok(block: Sequence[PlacementItem], max_items: int) -> bool:
    if len(block) > max_items:
        return False
    tenants = {it.tenant for it in block}
    if len(tenants) > 1 and any(not it.shareable for it in block):
        return False
    return True


def exhaustive_minimum(inst: ProblemInstance) -> int:
    """Minimal total cost in cents by brute force."""
    variants = [v for v in inst.variants if not v.is_zero]

    def block_cost(block) -> Optional[int]:
        if not _block_ok(block, inst.max_items_per_container):
            return None
        load = sum(it.capacity_mb for it in block)
        fitting = [v.cost_cents for v in variants if v.capacity_mb >= load]
        return min(fitting) if fitting else None

    best: Optional[int] = None
    for part in partitions(list(inst.items)):
        if len(part) > inst.max_containers:
            continue
        total = 0
        for block in part:
            c = block_cost(block)
            if c is None:
                total = None
                break
            total += c
        if total is not None and (best is None or total < best):
            best = total
    if best is None:
        raise Infeasible("no feasible partition")
    return best


def exhaustive_min_containers(
    items: Sequence[PlacementItem], capacity_mb: float, max_items: int
) -> int:
    """Minimal number of containers of one fixed size, by brute force."""
    best: Optional[int] = None
    for part in partitions(list(items)):
        ok = all(
            _block_ok(block, max_items)
            and sum(it.capacity_mb for it in block) <= capacity_mb
            for block in part
        )
        if ok and (best is None or len(part) < best):
            best = len(part)
    if best is None:
        raise Infeasible("some item exceeds the container size")
    return best
