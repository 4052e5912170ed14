"""End-to-end acceptance gates, one per shipped guarantee.

Each test prints a single [PASS]/[FAIL] line (visible with ``pytest -s``)
and fails loudly when the guarantee does not hold.
"""
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from _gen import random_instance, random_items  # noqa: E402
from _oracle import exhaustive_min_containers, exhaustive_minimum  # noqa: E402

from cepp.cli import _standalone_pricer
from cepp.fixtures import (
    aws_t2_catalog,
    edocuments_workload,
    example1_catalog,
    example1_workload,
    invoicing,
    sample_mixed,
)
from cepp.graph import validate_ipcg
from cepp.heuristic import (
    SearchConfig,
    TRANSFORMS,
    _affected,
    _apply,
    _revert,
    ffd_container_count,
    ffd_initial,
    local_search,
)
from cepp.model import (
    ContainerVariant,
    TooLarge,
    ZERO_VARIANT,
    check_feasible,
    format_eur,
    hosting_baseline,
    placement_to_json,
    solve_exact,
    total_cost,
)
from cepp.rewrite import (
    RuleId,
    apply_match,
    decompose,
    find_matches,
    improve,
    verify_rewrite,
)
from cepp.rng import SplitMix64
from cepp.workload import flatten


def report(n: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    print(line)
    assert ok, line


def test_criterion_1_reference_optimum():
    t0 = time.perf_counter()
    inst = flatten(example1_workload(), example1_catalog())
    placement, proven = solve_exact(inst)
    cost = total_cost(placement, inst)
    wall = time.perf_counter() - t0

    groups: dict[int, set[str]] = {}
    for item_id, c in placement.item_to_container.items():
        groups.setdefault(c, set()).add(item_id)
    by_members = {
        frozenset(members): inst.variants[placement.container_to_variant[c]]
        for c, members in groups.items()
    }
    shared = by_members.get(frozenset({"pc_t1_1", "pc_t2_1", "pc_t3_1"}))
    pinned = by_members.get(frozenset({"pc_t1_2", "pc_t1_3"}))
    baseline = hosting_baseline(inst)

    ok = (
        proven
        and cost == 5000
        and len(groups) == 2
        and shared is not None
        and shared.cost_cents == 2000
        and pinned is not None
        and pinned.cost_cents == 3000
        and 6000 <= baseline <= 9000
        and wall < 1.0
    )
    report(
        1,
        ok,
        f"exact {format_eur(cost)} EUR/mo in {wall*1000:.0f} ms, "
        f"hosting baseline {format_eur(baseline)}",
    )


def test_criterion_2_oracle_equivalence():
    t0 = time.perf_counter()
    mismatches = 0
    for seed in range(1, 51):
        rng = SplitMix64(seed * 977)
        n = rng.randint(2, 8)
        tenants = rng.randint(2, 4)
        inst = random_instance(seed * 977 + 1, n, tenants)
        placement, proven = solve_exact(inst)
        assert proven
        if total_cost(placement, inst) != exhaustive_minimum(inst):
            mismatches += 1
    wall = time.perf_counter() - t0
    ok = mismatches == 0 and wall < 30.0
    report(2, ok, f"50 instances vs exhaustive oracle, {mismatches} mismatches, {wall:.1f} s")


def test_criterion_3_heuristic_quality():
    within = 0
    worst = 0.0
    sane = True
    for seed in range(1, 21):
        inst = random_instance(seed * 1303, 20, 3)
        exact_p, proven = solve_exact(inst, budget_s=20.0, allow_large=True)
        assert proven
        opt = total_cost(exact_p, inst)
        _, cost = local_search(inst, SearchConfig(max_transformations=10_000, rng_seed=seed))
        ratio = cost / opt
        worst = max(worst, ratio)
        if ratio <= 1.40:
            within += 1
        if ratio < 1.0:
            sane = False
    ok = within >= 16 and sane
    report(3, ok, f"within 1.40x on {within}/20 runs, worst ratio {worst:.3f}, none below 1.0")


def test_criterion_4_heuristic_speed_and_guard():
    inst = random_instance(4242, 100, 5)
    t0 = time.perf_counter()
    placement, _ = local_search(inst, SearchConfig(max_transformations=10_000, rng_seed=7))
    wall = time.perf_counter() - t0
    assert check_feasible(placement, inst).is_correct
    guarded = False
    try:
        solve_exact(inst)
    except TooLarge:
        guarded = True
    ok = wall < 5.0 and guarded
    report(4, ok, f"100 items, 10k transformations in {wall:.2f} s; exact refused (TooLarge)")


def fixture_graphs():
    graphs = [("sample_mixed", sample_mixed()), ("invoicing", invoicing())]
    for w, prefix in ((example1_workload(), "example1"), (edocuments_workload(), "edocs")):
        for e in w.processes:
            graphs.append((f"{prefix}:{e.name}", e.graph))
    return graphs


def test_criterion_5_rewrite_correctness():
    t0 = time.perf_counter()
    rules = (
        RuleId.COMBINE_NEIGHBORS,
        RuleId.ROUTER_TO_ROUTING_SLIP,
        RuleId.SH_TO_NONSH,
        RuleId.NONSH_TO_SH,
    )
    checked = 0
    failures = []
    for name, g in fixture_graphs():
        for rule in rules:
            for m in find_matches(g, rule):
                result = apply_match(g, m)
                problems = verify_rewrite(g, result)
                for piece in result.graphs:
                    if not validate_ipcg(piece).is_correct:
                        problems.append("piece fails validation")
                if problems:
                    failures.append(f"{name}/{rule.value}{m.nodes}: {problems}")
                checked += 1
    wall = time.perf_counter() - t0
    ok = not failures and checked > 0 and wall < 10.0
    detail = f"{checked} matches across {len(fixture_graphs())} fixture graphs, {wall:.1f} s"
    if failures:
        detail += f"; first failure: {failures[0]}"
    report(5, ok, detail)


def test_criterion_6_decomposition_counts():
    result = decompose(sample_mixed())
    sh = sum(
        1 for g in result.graphs if all(n.char.shareable for n in g.nodes if not n.is_plumbing)
    )
    nonsh = len(result.graphs) - sh
    pieces = sum(len(decompose(e.graph).graphs) for e in edocuments_workload().processes)
    ok = (sh, nonsh) == (3, 1) and pieces == 19
    report(6, ok, f"mixed sample -> {sh} shareable + {nonsh} non-shareable; 13 processes -> {pieces}")


def test_criterion_7_invoicing_end_to_end():
    g = invoicing()
    pricer = _standalone_pricer(aws_t2_catalog(), 1, 10_000)
    final, applied = improve(g, pricer)
    removed = sum(p.nodes_removed for p in applied)
    before = format_eur(applied[0].cost_before_cents) if applied else "?"
    after = format_eur(applied[-1].cost_after_cents) if applied else "?"
    ok = (
        removed == 5
        and len(final.nodes) == len(g.nodes) - 5
        and before == "15.94"
        and after == "7.97"
        and validate_ipcg(final).is_correct
    )
    report(7, ok, f"removed {removed} nodes, {before} -> {after} EUR/mo on aws_t2")


def test_criterion_8_ffd_bound():
    violations = 0
    for seed in range(1, 101):
        rng = SplitMix64(seed * 31)
        n = rng.randint(2, 8)
        cap = float(rng.randint(8, 16) * 128)
        items = random_items(rng, n, 3, non_shareable_ratio=0.0, cap_range=(64, int(cap)))
        variants = (ZERO_VARIANT, ContainerVariant("only", "gen", cap, 100))
        ffd = ffd_container_count(items, variants, max_items_per_container=n)
        opt = exhaustive_min_containers(items, cap, n)
        bound = -(-(11 * opt + 6) // 9)  # ceil(11/9 * opt + 2/3)
        if ffd > bound:
            violations += 1
    ok = violations == 0
    report(8, ok, f"FFD <= ceil(11/9*OPT + 2/3) on 100 single-variant cases, {violations} violations")


def test_criterion_9_feasibility_invariance():
    inst = random_instance(505, 30)
    state = ffd_initial(inst)
    rng = SplitMix64(9)
    cycle = ("move", "swap", "shrink")
    violations = 0
    accepted = 0
    last_cost = state.cost_cents
    for k in range(10_000):
        delta = TRANSFORMS[cycle[k % 3]](state, rng)
        if delta is None:
            continue
        before = state.cost_cents
        _apply(state, delta)
        fits = all(state.capacity_ok(state.containers[c]) for c in _affected(delta))
        if state.cost_cents > before or not fits:
            _revert(state, delta)
            continue
        accepted += 1
        if not check_feasible(state.to_placement(), inst).is_correct:
            violations += 1
        if state.cost_cents > last_cost:
            violations += 1
        last_cost = state.cost_cents
    ok = violations == 0 and accepted > 0
    report(9, ok, f"{accepted} accepted states over 10k steps, {violations} violations")


def test_criterion_10_determinism():
    inst = random_instance(77, 15)

    def run_heuristic():
        p, _ = local_search(inst, SearchConfig(max_transformations=10_000, rng_seed=5))
        return placement_to_json(p, inst, meta={"method": "heuristic", "seed": 5})

    def run_exact():
        p, _ = solve_exact(inst)
        return placement_to_json(p, inst, meta={"method": "exact"})

    ok = run_heuristic() == run_heuristic() and run_exact() == run_exact()
    report(10, ok, "placement JSON byte-identical across repeated runs (both methods)")
