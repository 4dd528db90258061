import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import II, III, IV, I, V, VI, random_load_matrix
from oracles import brute_layout_optimum, paper_distance, rectilinear_distance
from test_layout import FINAL_COLS, INITIAL_COLS, columns_layout
from mass_layout.craft import (CraftConfig, InstanceTooLarge, brute_force_optimum,
                               improve_once, run_craft)
from mass_layout.layout import (BlockLayout, DistanceModel, FloorPlan, build_floor_plan,
                                total_cost)
from mass_layout.matrix import parse_load_matrix

PAPER = DistanceModel.PAPER
PAPER_CFG = CraftConfig(model=PAPER)
TWO_WAY_ONLY = CraftConfig(model=PAPER, column_exchange=False)


def cost(lay, m, model=PAPER):
    return total_cost(lay, m, model).total


def two_swap_local_optimal(lay, m, model):
    base = cost(lay, m, model)
    occ = list(lay.placement) + [s for s in lay.plan.slots() if s not in set(lay.placement)]
    for a, b in itertools.combinations(range(len(occ)), 2):
        if a >= lay.n and b >= lay.n:
            continue
        p = list(occ)
        p[a], p[b] = p[b], p[a]
        if cost(BlockLayout(lay.plan, tuple(p[:lay.n])), m, model) < base:
            return False
    return True


def test_single_pass_from_worked_example_start(appendix, appendix_plan):
    start = columns_layout(appendix_plan, INITIAL_COLS)
    lay, step = improve_once(start, appendix, PAPER_CFG)
    assert (step.cost_before, step.cost_after) == (2580, 2360)
    assert step.kind == "column-exchange"
    assert set(step.facilities) == {III, IV, V, VI}
    assert improve_once(lay, appendix, PAPER_CFG) is None


def test_worked_example_start_is_two_swap_local_optimum(appendix, appendix_plan):
    # Splitting a pair never pays, so facility swaps alone stop at 2580.
    start = columns_layout(appendix_plan, INITIAL_COLS)
    assert improve_once(start, appendix, TWO_WAY_ONLY) is None
    assert improve_once(start, appendix, CraftConfig(model=PAPER, column_exchange=False,
                                                     enable_three_way=True)) is None
    assert two_swap_local_optimal(start, appendix, PAPER)


def test_final_layout_has_no_improvement(appendix, appendix_plan):
    final = columns_layout(appendix_plan, FINAL_COLS)
    assert improve_once(final, appendix, CraftConfig(model=PAPER, enable_three_way=True)) is None


def test_two_facilities_symmetric():
    m = parse_load_matrix("name,A,B\nA,-,7\nB,-,-\n")
    plan = FloorPlan(22, 10, 2, 1, 2)
    lay = BlockLayout(plan, ((0, 0), (0, 1)))
    assert improve_once(lay, m, PAPER_CFG) is None


def test_run_craft_worked_example(appendix, appendix_plan):
    res = run_craft(columns_layout(appendix_plan, INITIAL_COLS), appendix, PAPER_CFG)
    assert res.initial_cost - res.final_cost == 220
    assert len(res.trace) == 1 and res.converged
    assert cost(res.layout, appendix) == 2360


def test_run_craft_already_optimal(appendix, appendix_plan):
    start = columns_layout(appendix_plan, FINAL_COLS)
    res = run_craft(start, appendix, PAPER_CFG)
    assert len(res.trace) == 0 and res.layout == start and res.final_cost == 2360


def test_max_iterations_reported(appendix, appendix_plan):
    start = BlockLayout(appendix_plan, ((0, 0), (0, 2), (1, 0), (0, 1), (1, 2), (1, 1)))
    full = run_craft(start, appendix, PAPER_CFG)
    assert len(full.trace) >= 2
    capped = run_craft(start, appendix, CraftConfig(model=PAPER, max_iterations=1))
    assert len(capped.trace) == 1 and not capped.converged


def test_config_guard():
    with pytest.raises(ValueError):
        CraftConfig(max_iterations=0)


def test_all_starts_reach_optimum(appendix, appendix_plan):
    finals = set()
    for p in itertools.permutations(appendix_plan.slots()):
        res = run_craft(BlockLayout(appendix_plan, p), appendix, PAPER_CFG)
        assert res.final_cost >= 2360
        finals.add(res.final_cost)
    assert finals == {2360}


def test_two_way_only_from_all_starts(appendix, appendix_plan):
    finals = []
    for p in itertools.permutations(appendix_plan.slots()):
        finals.append(run_craft(BlockLayout(appendix_plan, p), appendix, TWO_WAY_ONLY).final_cost)
    assert min(finals) == 2360
    assert sum(f == 2360 for f in finals) > len(finals) // 2


def test_brute_force_appendix(appendix, appendix_plan):
    opt, lay = brute_force_optimum(appendix, appendix_plan, PAPER)
    assert opt == 2360 == cost(lay, appendix)
    dist = lambda a, b: paper_distance(a, b, 64, 22, 2, 2, 3)
    flows = {(i, j): v for i, j, v in appendix.arcs()}
    assert brute_layout_optimum(flows, 6, 2, 3, dist) == 2360


def test_brute_force_single():
    m = parse_load_matrix("name,A\nA,-\n")
    opt, lay = brute_force_optimum(m, build_floor_plan(10, 10, 2, 1), PAPER)
    assert opt == 0 and lay.placement == ((0, 0),)


def test_brute_force_pair():
    m = parse_load_matrix("name,A,B\nA,-,7\nB,-,-\n")
    opt, lay = brute_force_optimum(m, FloorPlan(42, 10, 2, 1, 2), PAPER)
    assert opt == 7 * 22
    assert lay.placement == ((0, 0), (0, 1))


def test_brute_force_guard():
    rng = random.Random(1)
    m = random_load_matrix(rng, 9)
    with pytest.raises(InstanceTooLarge):
        brute_force_optimum(m, build_floor_plan(100, 100, 1, 9), PAPER)


def test_determinism(appendix, appendix_plan):
    start = BlockLayout(appendix_plan, ((1, 2), (0, 1), (0, 0), (1, 1), (1, 0), (0, 2)))
    cfg = CraftConfig(model=DistanceModel.RECTILINEAR, enable_three_way=True)
    assert run_craft(start, appendix, cfg) == run_craft(start, appendix, cfg)


def random_instance(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    rows = rng.randint(1, 3)
    cols = -(-n // rows)
    if rows * (cols + 1) <= n + 2:
        cols += rng.randint(0, 1)
    plan = FloorPlan(cols * rng.randint(4, 12), rows * rng.randint(4, 12), 1, rows, cols)
    m = random_load_matrix(rng, n, density=rng.uniform(0.2, 0.8))
    start = BlockLayout(plan, tuple(rng.sample(plan.slots(), n)))
    cfg = CraftConfig(model=rng.choice(list(DistanceModel)),
                      enable_three_way=rng.random() < 0.3,
                      column_exchange=rng.random() < 0.7)
    return m, plan, start, cfg


def check_run(m, plan, start, cfg):
    res = run_craft(start, m, cfg)
    before = cost(start, m, cfg.model)
    for s in res.trace:
        assert s.cost_after < s.cost_before == before
        before = s.cost_after
    assert res.final_cost == before == cost(res.layout, m, cfg.model)
    assert two_swap_local_optimal(res.layout, m, cfg.model)
    if cfg.enable_three_way:
        assert improve_once(res.layout, m, cfg) is None
    ref = paper_distance if cfg.model is PAPER else rectilinear_distance
    geo = (plan.width_m, plan.height_m, plan.aisle_m, plan.rows, plan.cols)
    flows = {(i, j): v for i, j, v in m.arcs()}
    assert res.final_cost >= brute_layout_optimum(flows, m.n, plan.rows, plan.cols,
                                                  lambda a, b: ref(a, b, *geo))
    return res


@given(st.integers(0, 2**32))
def test_craft_properties(seed):
    check_run(*random_instance(seed))


@given(st.integers(0, 2**32))
def test_package_oracle_matches_reference(seed):
    m, plan, _, cfg = random_instance(seed)
    ref = paper_distance if cfg.model is PAPER else rectilinear_distance
    geo = (plan.width_m, plan.height_m, plan.aisle_m, plan.rows, plan.cols)
    flows = {(i, j): v for i, j, v in m.arcs()}
    opt, lay = brute_force_optimum(m, plan, cfg.model)
    assert opt == brute_layout_optimum(flows, m.n, plan.rows, plan.cols,
                                       lambda a, b: ref(a, b, *geo))
    assert cost(lay, m, cfg.model) == opt


def test_vacant_slot_moves():
    # One facility pair on a 1x3 strip: the loner should slide next to its partner.
    m = parse_load_matrix("name,A,B\nA,-,5\nB,-,-\n")
    plan = FloorPlan(34, 10, 2, 1, 3)
    res = run_craft(BlockLayout(plan, ((0, 0), (0, 2))), m, PAPER_CFG)
    assert res.final_cost == 5 * 12
    assert len(res.trace) == 1 and res.trace.steps[0].facilities in ((0,), (1,))
