"""求解主循环

循环 r 集合 DR：第 k 步作用 S_{k+1} = T_{C_{m,r}(k+1)}；
完整循环 / 短循环：每步作用一次 Q / Q̃；
随机乘积：每步按硬币在 Q 与 T₂ 之间选择；
乘积空间 DR：状态为 H^m 中的 m 元组，代表点取分量平均。
"""
import time
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from loguru import logger
from numpy.typing import NDArray

from src.geometry import Vector, as_vector
from src.operators import ProductSpaceDROperator, ProjectionCounter, extract_candidate
from src.problems.model import FeasibilityProblem
from src.schedule import (
    SweepKind,
    SweepPlan,
    build_block_operators,
    build_Q,
    build_Q_tilde,
    random_product_step,
)
from src.solver.config import SolverConfig, SolverMethod
from src.solver.metrics import error_metric
from src.solver.report import SolveReport, Termination, TraceRow
from src.solver.stopping import StallMonitor

IterateCallback = Callable[[int, Vector], None]

PROGRESS_LOG_EVERY = 10_000
FIXED_POINT_FACTOR = 10.0


def _relative_gap(state: NDArray, image: NDArray) -> float:
    return float(np.linalg.norm(image - state)) / max(float(np.linalg.norm(state)), 1.0)


class _CyclicStepper:
    """逐块作用 S_1, S_2, …（周期 m）"""

    def __init__(self, problem: FeasibilityProblem, r: int, x0: Vector):
        self.operators = build_block_operators(problem, r)
        self.state = x0
        self._k = 0

    def step(self, counter: ProjectionCounter) -> str:
        op = self.operators[self._k % len(self.operators)]
        self.state = op.apply(self.state, counter)
        self._k += 1
        return op.describe()

    def fixed_point_gap(self) -> float:
        op = self.operators[self._k % len(self.operators)]
        return _relative_gap(self.state, op.apply(self.state, ProjectionCounter()))

    def point(self) -> Vector:
        return self.state


class _SweepStepper:
    """每步作用一次完整扫描 Q 或 Q̃"""

    def __init__(self, sweep, x0: Vector):
        self.sweep = sweep
        self.state = x0

    def step(self, counter: ProjectionCounter) -> str:
        self.state = self.sweep.apply(self.state, counter)
        return self.sweep.describe()

    def fixed_point_gap(self) -> float:
        return _relative_gap(self.state, self.sweep.apply(self.state, ProjectionCounter()))

    def point(self) -> Vector:
        return self.state


class _RandomProductStepper:
    def __init__(self, problem: FeasibilityProblem, config: SolverConfig, x0: Vector):
        self.problem = problem
        self.plan = SweepPlan(
            SweepKind.RANDOM_PRODUCT,
            m=problem.m,
            r=config.r,
            rng_seed=config.rng_seed,
            coin_bias=config.coin_bias,
            second_operator=config.second_operator,
        )
        self.state = x0

    def step(self, counter: ProjectionCounter) -> str:
        self.state = random_product_step(self.plan, self.problem, self.state, counter)
        return self.plan.last_choice

    def fixed_point_gap(self) -> float:
        # 下一步由硬币决定，不消耗随机数，两个算子都检查
        t1, t2 = self.plan.operators_for(self.problem)
        return max(
            _relative_gap(self.state, t1.apply(self.state, ProjectionCounter())),
            _relative_gap(self.state, t2.apply(self.state, ProjectionCounter())),
        )

    def point(self) -> Vector:
        return self.state


class _ProductSpaceStepper:
    def __init__(self, problem: FeasibilityProblem, x0: Vector):
        self.operator = ProductSpaceDROperator(problem.sets)
        self.state: NDArray = self.operator.initial_state(x0)

    def step(self, counter: ProjectionCounter) -> str:
        self.state = self.operator.apply(self.state, counter)
        return "T(C,D)"

    def fixed_point_gap(self) -> float:
        return _relative_gap(self.state, self.operator.apply(self.state, ProjectionCounter()))

    def point(self) -> Vector:
        return extract_candidate(self.state)


def _make_stepper(problem: FeasibilityProblem, config: SolverConfig, x0: Vector):
    method = config.method
    if method is SolverMethod.CYCLIC:
        return _CyclicStepper(problem, config.r, x0)
    if method is SolverMethod.FULL_CYCLE:
        return _SweepStepper(build_Q(problem, config.r), x0)
    if method is SolverMethod.SHORT_CYCLE:
        return _SweepStepper(build_Q_tilde(problem, config.r), x0)
    if method is SolverMethod.RANDOM_PRODUCT:
        return _RandomProductStepper(problem, config, x0)
    return _ProductSpaceStepper(problem, x0)


def solve(
    problem: FeasibilityProblem,
    config: SolverConfig,
    x0: Vector,
    callback: Optional[IterateCallback] = None,
    seeds: Optional[Dict[str, Any]] = None,
) -> SolveReport:
    """运行求解器直到满足停止准则或达到最大迭代次数

    Args:
        problem: 可行性问题
        config: 求解配置
        x0: 初始点
        callback: 每步之后调用 callback(iteration, point)
        seeds: 需要回显到报告中的种子

    Returns:
        SolveReport；出现非有限迭代点时以 numerical-failure 终止而不抛异常
    """
    config.validate_for(problem)
    x0 = as_vector(x0, dim=problem.dimension, name="x0")
    window = config.resolved_stall_window(problem.m)
    monitor = StallMonitor(window, config.epsilon)
    counter = ProjectionCounter()
    stepper = _make_stepper(problem, config, x0)

    trace: List[TraceRow] = []
    operator_log: List[Tuple[int, str]] = []
    elapsed = 0.0
    fixed_point_gap: Optional[float] = None

    def record() -> None:
        trace.append(
            TraceRow(
                iteration=counter.iterations,
                projections=counter.projections,
                error=error_metric(problem, stepper.point()),
                elapsed_s=elapsed,
            )
        )

    logger.info(
        f"🚀 开始求解: {config.label}, n={problem.dimension}, m={problem.m}, "
        f"ε={config.epsilon:g}, 窗口={window}"
    )
    record()
    termination = Termination.MAX_ITERATIONS

    while counter.iterations < config.max_iterations:
        previous = stepper.state
        started = time.perf_counter()
        description = stepper.step(counter)
        counter.tick()
        finite = bool(np.all(np.isfinite(stepper.state)))
        converged = finite and monitor.update(previous, stepper.state)
        if converged:
            fixed_point_gap = stepper.fixed_point_gap()
            if fixed_point_gap > FIXED_POINT_FACTOR * config.epsilon:
                logger.debug(
                    f"第 {counter.iterations} 次迭代停滞但下一算子仍移动 {fixed_point_gap:.3e}，继续迭代"
                )
                monitor.consecutive = 0
                converged = False
        elapsed += time.perf_counter() - started

        if not finite:
            stepper.state = previous
            termination = Termination.NUMERICAL_FAILURE
            logger.warning(f"❌ 第 {counter.iterations} 次迭代出现非有限值，终止求解")
            break

        if config.log_operators:
            operator_log.append((counter.iterations, description))
        if callback is not None:
            callback(counter.iterations, stepper.point())
        if converged or counter.iterations % config.trace_every == 0:
            record()
        if counter.iterations % PROGRESS_LOG_EVERY == 0:
            logger.debug(
                f"迭代 {counter.iterations}: 投影 {counter.projections}, "
                f"Error={trace[-1].error:.3e}"
            )
        if converged:
            termination = Termination.CONVERGED
            break

    if trace[-1].iteration != counter.iterations:
        record()

    final_point = stepper.point()
    final_error = error_metric(problem, final_point)

    if termination is Termination.CONVERGED:
        logger.success(
            f"✅ 收敛: {config.label}, 迭代 {counter.iterations}, 投影 {counter.projections}, "
            f"Error={final_error:.3e}, 用时 {elapsed:.3f}s"
        )
    elif termination is Termination.MAX_ITERATIONS:
        logger.warning(
            f"⚠️ 达到最大迭代次数 {config.max_iterations}: {config.label}, Error={final_error:.3e}"
        )

    return SolveReport(
        final_point=final_point,
        termination=termination,
        counters=counter,
        error_trace=trace,
        wall_time_s=elapsed,
        final_error=final_error,
        config=config,
        seeds=dict(seeds or {}),
        operator_log=operator_log,
        fixed_point_gap=fixed_point_gap if termination is Termination.CONVERGED else None,
    )
