"""调度模块测试：块下标、Q、Q̃ 与随机乘积"""
from collections import Counter

import numpy as np
import pytest

from src.errors import InvalidInputError
from src.operators import ComposedProjections, ProjectionCounter
from src.problems import FeasibilityProblem, GeneratorParams, generate_quadratic
from src.geometry import Ball
from src.schedule import (
    BlockSchedule,
    SecondOperator,
    SweepKind,
    SweepPlan,
    block_indices,
    build_Q,
    build_Q_tilde,
    random_product_step,
)


def _problem(m: int, n: int = 4, seed: int = 3) -> FeasibilityProblem:
    return generate_quadratic(GeneratorParams(n=n, m=m, seed=seed))


# ==================== 块下标 ====================

def test_five_sets_three_per_block():
    blocks = [block_indices(5, 3, d) for d in range(1, 6)]
    assert blocks == [(0, 1, 2), (2, 3, 4), (4, 0, 1), (1, 2, 3), (3, 4, 0)]


def test_two_sets_pairs_alternate():
    assert [block_indices(2, 2, d) for d in (1, 2, 3)] == [(0, 1), (1, 0), (0, 1)]


@pytest.mark.parametrize("m", range(2, 11))
def test_pairs_follow_consecutive_cycle(m):
    for d in range(1, 3 * m + 1):
        i = (d - 1) % m
        assert block_indices(m, 2, d) == (i, (i + 1) % m)


@pytest.mark.parametrize("m, r, d", [(0, 2, 1), (5, 1, 1), (5, 3, 0)])
def test_block_indices_rejects_bad_arguments(m, r, d):
    with pytest.raises(InvalidInputError):
        block_indices(m, r, d)


@pytest.mark.parametrize("m, r", [(5, 3), (7, 2), (10, 4), (6, 6), (9, 5)])
def test_consecutive_blocks_share_one_index(m, r):
    for d in range(1, 2 * m):
        assert block_indices(m, r, d)[-1] == block_indices(m, r, d + 1)[0]


@pytest.mark.parametrize("m, r", [(5, 3), (7, 2), (10, 4), (6, 6), (9, 5)])
def test_period_covers_every_set_equally(m, r):
    """去掉每块的首个下标后，一个周期恰好把每个集合覆盖 r−1 次"""
    tails = [i for d in range(1, m + 1) for i in block_indices(m, r, d)[1:]]
    assert len(tails) == (r - 1) * m
    assert Counter(tails) == {i: r - 1 for i in range(m)}


@pytest.mark.parametrize("m, r", [(5, 3), (7, 2), (10, 4)])
def test_schedule_is_periodic(m, r):
    schedule = BlockSchedule(m, r)
    for d in range(1, m + 1):
        assert schedule.block(d) == schedule.block(d + m) == block_indices(m, r, d)
    assert len(schedule.period_blocks) == m


def test_schedule_rejects_bad_arguments():
    with pytest.raises(InvalidInputError):
        BlockSchedule(5, 1)
    with pytest.raises(InvalidInputError):
        BlockSchedule(5, 3).block(0)


# ==================== Q 与 Q̃ ====================

def test_full_cycle_block_order():
    q = build_Q(_problem(5), 3)
    assert q.blocks == [(0, 1, 2), (2, 3, 4), (4, 0, 1), (1, 2, 3), (3, 4, 0)]
    assert q.projections_per_apply == 15
    assert q.blocks[-1][-1] == 0
    assert q.describe() == "T(0,1,2) T(2,3,4) T(4,0,1) T(1,2,3) T(3,4,0)"


def test_full_cycle_pairs_for_three_sets():
    assert build_Q(_problem(3), 2).blocks == [(0, 1), (1, 2), (2, 0)]


def test_full_cycle_rejects_oversized_block():
    with pytest.raises(InvalidInputError):
        build_Q(_problem(3), 4)


def test_full_cycle_applies_blocks_in_order(rng):
    problem = _problem(5)
    q = build_Q(problem, 3)
    x = rng.uniform(-10, 10, problem.dimension)
    counter = ProjectionCounter()
    expected = x
    for op in q.operators:
        expected = op.apply(expected, counter)
    assert np.array_equal(q.apply(x, ProjectionCounter()), expected)


def test_full_cycle_fixes_feasible_point():
    problem = _problem(7)
    origin = np.zeros(problem.dimension)
    counter = ProjectionCounter()
    assert np.linalg.norm(build_Q(problem, 3).apply(origin, counter)) <= 1e-12
    assert counter.projections == 21


@pytest.mark.parametrize(
    "m, r, blocks",
    [
        (4, 3, [(0, 1, 2), (2, 3, 0)]),
        (6, 3, [(0, 1, 2), (2, 3, 4), (4, 5, 0)]),
        (6, 2, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]),
    ],
)
def test_short_cycle_blocks(m, r, blocks):
    assert build_Q_tilde(_problem(m), r).blocks == blocks


def test_short_cycle_requires_divisibility():
    with pytest.raises(InvalidInputError, match="整除"):
        build_Q_tilde(_problem(5), 3)


# ==================== 扫描方案 ====================

def test_sweep_plan_validation():
    with pytest.raises(InvalidInputError):
        SweepPlan(SweepKind.SHORT_CYCLE, m=5, r=3)
    with pytest.raises(InvalidInputError):
        SweepPlan(SweepKind.FULL_CYCLE, m=5, r=6)
    with pytest.raises(InvalidInputError):
        SweepPlan(SweepKind.RANDOM_PRODUCT, m=5, r=2, coin_bias=1.5)
    assert SweepPlan("short-cycle", m=6, r=3).kind is SweepKind.SHORT_CYCLE


def test_random_product_step_requires_random_plan():
    problem = _problem(4)
    plan = SweepPlan(SweepKind.FULL_CYCLE, m=4, r=2)
    with pytest.raises(InvalidInputError):
        random_product_step(plan, problem, np.zeros(problem.dimension), ProjectionCounter())


def _random_trajectory(problem, steps, **kwargs):
    plan = SweepPlan(SweepKind.RANDOM_PRODUCT, m=problem.m, r=2, **kwargs)
    x = np.full(problem.dimension, 9.0)
    counter = ProjectionCounter()
    points, choices = [], []
    for _ in range(steps):
        x = random_product_step(plan, problem, x, counter)
        points.append(x)
        choices.append(plan.last_choice)
    return points, choices, counter


def test_bias_one_repeats_full_cycle():
    problem = _problem(6)
    points, choices, _ = _random_trajectory(problem, 5, coin_bias=1.0)
    q = build_Q(problem, 2)
    x = np.full(problem.dimension, 9.0)
    for p in points:
        x = q.apply(x, ProjectionCounter())
        assert np.array_equal(p, x)
    assert set(choices) == {"Q"}


def test_bias_zero_repeats_cyclic_projections():
    problem = _problem(6)
    points, choices, counter = _random_trajectory(problem, 5, coin_bias=0.0)
    projections = ComposedProjections(problem.sets)
    x = np.full(problem.dimension, 9.0)
    for p in points:
        x = projections.apply(x, ProjectionCounter())
        assert np.array_equal(p, x)
    assert set(choices) == {"T2"}
    assert counter.projections == 5 * 6


def test_full_dr_second_operator_uses_all_sets():
    problem = _problem(4)
    plan = SweepPlan(
        SweepKind.RANDOM_PRODUCT, m=4, r=2, coin_bias=0.0,
        second_operator=SecondOperator.FULL_DR,
    )
    _, t2 = plan.operators_for(problem)
    assert t2.describe() == "T(0,1,2,3)"
    counter = ProjectionCounter()
    random_product_step(plan, problem, np.ones(problem.dimension), counter)
    assert counter.projections == 4


def test_random_product_is_seed_deterministic():
    problem = _problem(6)
    a_points, a_choices, _ = _random_trajectory(problem, 30, rng_seed=11)
    b_points, b_choices, _ = _random_trajectory(problem, 30, rng_seed=11)
    assert a_choices == b_choices
    assert all(np.array_equal(a, b) for a, b in zip(a_points, b_points))
    assert {"Q", "T2"} == set(a_choices)


def test_plan_rejects_problem_of_other_size():
    plan = SweepPlan(SweepKind.RANDOM_PRODUCT, m=4, r=2)
    with pytest.raises(InvalidInputError):
        plan.operators_for(_problem(5))


def test_single_ball_problem_can_not_form_blocks():
    problem = FeasibilityProblem(dimension=2, sets=(Ball([0.0, 0.0], 1.0),))
    with pytest.raises(InvalidInputError):
        build_Q(problem, 2)
