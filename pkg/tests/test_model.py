"""Placement model: money, feasibility, exact solver, LP export."""
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from _gen import random_instance  # noqa: E402
from _oracle import exhaustive_minimum  # noqa: E402

from cepp.model import (
    ContainerVariant,
    Infeasible,
    Placement,
    PlacementItem,
    ProblemInstance,
    TooLarge,
    ZERO_VARIANT,
    check_feasible,
    cheapest_fit_index,
    conflicts,
    export_lp,
    format_eur,
    hosting_baseline,
    placement_to_json,
    solve_exact,
    to_cents,
    total_cost,
)

V = ContainerVariant
I = PlacementItem


def small_inst(items, variants=None, **kw):
    variants = variants or [V("a", "x", 1000.0, 1000), V("b", "x", 2000.0, 1500)]
    return ProblemInstance.build(items, variants, **kw)


# -- money -------------------------------------------------------------------


def test_money_round_trip():
    assert to_cents(15.94) == 1594
    assert to_cents(0.1 + 0.2) == 30
    assert format_eur(5000) == "50.00"
    assert format_eur(5) == "0.05"
    assert format_eur(797) == "7.97"
    assert format_eur(-1594) == "-15.94"
    assert format_eur(0) == "0.00"


# -- conflicts ------------------------------------------------------------------


def test_conflicts_truth_table():
    a = I("a", 1, "t1", True)
    b = I("b", 1, "t2", True)
    c = I("c", 1, "t2", False)
    d = I("d", 1, "t1", False)
    assert not conflicts(a, b)  # both shareable
    assert conflicts(a, c)  # cross tenant, one side pinned
    assert conflicts(c, d)
    assert not conflicts(c, I("e", 1, "t2", False))  # same tenant never conflicts
    assert not conflicts(a, d)


# -- instance construction ---------------------------------------------------


def test_build_orders_variants_and_prepends_zero():
    inst = small_inst([I("a", 10, "t1", True)], [V("big", "x", 2000.0, 99), V("small", "x", 100.0, 50)])
    assert inst.variants[0] == ZERO_VARIANT
    assert [v.variant_id for v in inst.variants[1:]] == ["small", "big"]


def test_build_defaults_are_sane():
    inst = small_inst([I(f"i{k}", 100, "t1", True) for k in range(4)])
    assert inst.max_items_per_container == 4
    assert inst.max_containers >= 1


# -- feasibility --------------------------------------------------------------


def feasible_placement(inst):
    p, _ = solve_exact(inst)
    return p


def test_check_feasible_passes_solver_output():
    inst = small_inst([I("a", 800, "t1", True), I("b", 800, "t2", True), I("c", 500, "t1", False)])
    assert check_feasible(feasible_placement(inst), inst).is_correct


def test_check_feasible_catches_overflow():
    inst = small_inst([I("a", 900, "t1", True), I("b", 900, "t2", True)])
    p = Placement({"a": 0, "b": 0}, {0: 1, **{j: 0 for j in range(1, inst.max_containers)}})
    codes = check_feasible(p, inst).codes()
    assert any("C3" in c for c in codes)


def test_check_feasible_catches_conflict():
    inst = small_inst([I("a", 100, "t1", False), I("b", 100, "t2", True)])
    p = Placement({"a": 0, "b": 0}, {0: 1, **{j: 0 for j in range(1, inst.max_containers)}})
    codes = check_feasible(p, inst).codes()
    assert any("C4" in c for c in codes)


def test_check_feasible_catches_unassigned_and_missing_variant():
    inst = small_inst([I("a", 100, "t1", True)])
    p = Placement({}, {j: 0 for j in range(inst.max_containers)})
    assert any("C1" in c for c in check_feasible(p, inst).codes())
    p2 = Placement({"a": 0}, {})
    assert any("C2" in c for c in check_feasible(p2, inst).codes())


def test_item_cap_per_container():
    items = [I(f"i{k}", 10, "t1", True) for k in range(3)]
    inst = small_inst(items, max_items_per_container=1)
    p, _ = solve_exact(inst)
    assert check_feasible(p, inst).is_correct
    used = {p.item_to_container[it.item_id] for it in items}
    assert len(used) == 3


# -- helpers ------------------------------------------------------------------


def test_cheapest_fit_prefers_cheap_not_small():
    variants = (ZERO_VARIANT, V("s", "x", 500.0, 90), V("l", "x", 1000.0, 80))
    n = cheapest_fit_index(variants, 400.0)
    assert variants[n].variant_id == "l"
    assert cheapest_fit_index(variants, 0.0) == 0
    assert cheapest_fit_index(variants, 5000.0) is None


def test_hosting_baseline_one_container_per_tenant(example1_workload, example1_catalog):
    from cepp.workload import flatten

    inst = flatten(example1_workload, example1_catalog)
    assert hosting_baseline(inst) == 7000


# -- exact solver ----------------------------------------------------------------


def test_exact_splits_on_conflict():
    # two non-shareable items of different tenants cannot share, even if they fit
    inst = small_inst([I("a", 100, "t1", False), I("b", 100, "t2", False)])
    p, proven = solve_exact(inst)
    assert proven
    assert p.item_to_container["a"] != p.item_to_container["b"]
    assert total_cost(p, inst) == 2000


def test_exact_packs_when_allowed():
    inst = small_inst([I("a", 400, "t1", True), I("b", 400, "t2", True)])
    p, proven = solve_exact(inst)
    assert proven
    assert total_cost(p, inst) == 1000


def test_exact_infeasible_when_item_fits_nothing():
    with pytest.raises(Infeasible):
        inst = ProblemInstance.build(
            [I("a", 5000, "t1", True)],
            [V("a", "x", 1000.0, 1000)],
            max_containers=2,
        )
        solve_exact(inst)


def test_exact_item_limit_guard():
    items = [I(f"i{k}", 10, "t1", True) for k in range(21)]
    inst = small_inst(items)
    with pytest.raises(TooLarge):
        solve_exact(inst)
    p, _ = solve_exact(inst, allow_large=True)
    assert check_feasible(p, inst).is_correct


def test_exact_budget_returns_feasible_incumbent():
    inst = random_instance(99, 18)
    p, proven = solve_exact(inst, budget_s=0.0)
    assert proven is False
    assert check_feasible(p, inst).is_correct


def test_exact_matches_oracle_on_mixed_instances():
    for seed in (7, 21, 35):
        inst = random_instance(seed, 6)
        p, proven = solve_exact(inst)
        assert proven
        assert total_cost(p, inst) == exhaustive_minimum(inst)


# -- LP export -----------------------------------------------------------------


def test_export_lp_shape():
    inst = small_inst([I("a", 800, "t1", False), I("b", 400, "t2", True)])
    text = export_lp(inst)
    assert text.startswith("Minimize")
    assert text.rstrip().endswith("End")
    C = inst.max_containers
    nvars = sum(1 for line in text.splitlines() if line.startswith((" x_", " y_")))
    assert nvars == C * (len(inst.items) + len(inst.variants))
    # one assignment row per item, one variant row + one capacity row per container
    assert sum(1 for line in text.splitlines() if line.startswith(" c1_")) == 2
    assert sum(1 for line in text.splitlines() if line.startswith(" c2_")) == C
    # conflicting pair gets a separation row per container
    assert sum(1 for line in text.splitlines() if line.startswith(" c4_")) == C


# -- placement JSON -----------------------------------------------------------


def test_placement_json_stable_and_complete():
    inst = small_inst([I("b", 400, "t2", True), I("a", 800, "t1", True)])
    p, _ = solve_exact(inst)
    one = placement_to_json(p, inst, meta={"method": "exact"})
    two = placement_to_json(p, inst, meta={"method": "exact"})
    assert one == two
    assert '"total_eur_mo"' in one
    assert one.endswith("\n")
