"""扫描方案：逐块、完整循环 Q、短循环 Q̃ 与随机乘积

- Q  = S_m ⋯ S_2 S_1，共 m 个块，最后处理的集合是 C_0
- Q̃ = S_n ⋯ S_1，n = m/(r−1)，只有 (r−1) 整除 m 时才可构造
- 随机乘积：每一步掷一枚有偏硬币，以 coin_bias 的概率作用 T₁ = Q，否则作用 T₂
"""
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.errors import InvalidInputError
from src.geometry import Vector
from src.operators import ComposedProjections, ProjectionCounter, RSetsDROperator
from src.problems.model import FeasibilityProblem
from src.schedule.blocks import Block, BlockSchedule


class SweepKind(str, Enum):
    """扫描方式"""
    PER_BLOCK = "per-block"  # 每次迭代一个块 S_{k+1}
    FULL_CYCLE = "full-cycle"  # Q
    SHORT_CYCLE = "short-cycle"  # Q̃
    RANDOM_PRODUCT = "random-product"


class SecondOperator(str, Enum):
    """随机乘积中的 T₂"""
    PROJECTIONS = "projections"  # P_{C_0}P_{C_1}⋯P_{C_{m−1}}
    FULL_DR = "full-dr"  # r = m 的 r 集合 DR 算子


class BlockSweep:
    """若干块算子的复合，按列表顺序依次作用（第一个先作用）"""

    def __init__(self, operators: Sequence[RSetsDROperator]):
        if not operators:
            raise InvalidInputError("扫描至少包含一个块算子")
        self.operators: Tuple[RSetsDROperator, ...] = tuple(operators)
        self.dimension = self.operators[0].dimension

    @property
    def blocks(self) -> List[Block]:
        return [op.indices for op in self.operators]

    @property
    def projections_per_apply(self) -> int:
        return sum(op.r for op in self.operators)

    def apply(self, x: Vector, counter: ProjectionCounter) -> Vector:
        for op in self.operators:
            x = op.apply(x, counter)
        return x

    def describe(self) -> str:
        return " ".join(op.describe() for op in self.operators)

    def __len__(self) -> int:
        return len(self.operators)


def _check_block_size(m: int, r: int) -> None:
    if r < 2:
        raise InvalidInputError(f"块大小 r 必须 ≥ 2，实际 {r}")
    if r > m:
        raise InvalidInputError(f"块大小 r={r} 不能超过集合个数 m={m}")


def build_block_operators(problem: FeasibilityProblem, r: int) -> List[RSetsDROperator]:
    """一个周期内的 m 个块算子 S_1..S_m（S_{d+m} = S_d）"""
    _check_block_size(problem.m, r)
    schedule = BlockSchedule(problem.m, r)
    return [
        RSetsDROperator([problem.sets[i] for i in block], indices=block)
        for block in schedule.period_blocks
    ]


def build_Q(problem: FeasibilityProblem, r: int) -> BlockSweep:
    """Q = S_m ⋯ S_2 S_1"""
    if r == problem.m:
        logger.debug(f"r = m = {r}，每个块都覆盖全部集合")
    return BlockSweep(build_block_operators(problem, r))


def build_Q_tilde(problem: FeasibilityProblem, r: int) -> BlockSweep:
    """Q̃ = S_n ⋯ S_1，n = m/(r−1)，一次完整扫过全部集合"""
    _check_block_size(problem.m, r)
    if problem.m % (r - 1) != 0:
        raise InvalidInputError(
            f"短循环 Q̃ 要求 (r−1) 整除 m：r−1={r - 1} 不整除 m={problem.m}"
        )
    count = problem.m // (r - 1)
    return BlockSweep(build_block_operators(problem, r)[:count])


class SweepPlan:
    """扫描方案

    随机乘积方案持有自己的随机数生成器，同一时间只能被一次求解使用。

    Args:
        kind: 扫描方式
        m: 集合个数（用于构造时校验）
        r: 块大小
        rng_seed: 随机乘积的 64 位种子
        coin_bias: 选择 T₁ = Q 的概率
        second_operator: T₂ 的选择
    """

    def __init__(
        self,
        kind: SweepKind,
        m: int,
        r: int,
        rng_seed: int = 0,
        coin_bias: float = 0.5,
        second_operator: SecondOperator = SecondOperator.PROJECTIONS,
    ):
        self.kind = SweepKind(kind)
        _check_block_size(m, r)
        if self.kind is SweepKind.SHORT_CYCLE and m % (r - 1) != 0:
            raise InvalidInputError(
                f"短循环 Q̃ 要求 (r−1) 整除 m：r−1={r - 1} 不整除 m={m}"
            )
        if not 0.0 <= coin_bias <= 1.0:
            raise InvalidInputError(f"coin_bias 必须在 [0, 1] 内，实际 {coin_bias}")
        self.m = m
        self.r = r
        self.rng_seed = int(rng_seed)
        self.coin_bias = float(coin_bias)
        self.second_operator = SecondOperator(second_operator)
        self.last_choice: Optional[str] = None

        self._rng = np.random.default_rng(self.rng_seed)
        self._problem_id: Optional[int] = None
        self._t1: Optional[BlockSweep] = None
        self._t2 = None

    def operators_for(self, problem: FeasibilityProblem):
        """返回 (T₁, T₂)，对同一个问题只构造一次"""
        if self._problem_id != id(problem):
            if problem.m != self.m:
                raise InvalidInputError(f"方案按 m={self.m} 构造，问题有 m={problem.m}")
            self._t1 = build_Q(problem, self.r)
            if self.second_operator is SecondOperator.FULL_DR:
                self._t2 = RSetsDROperator(problem.sets, indices=range(problem.m))
            else:
                self._t2 = ComposedProjections(problem.sets)
            self._problem_id = id(problem)
        return self._t1, self._t2

    def draw(self) -> bool:
        """掷一次硬币，True 表示选择 T₁"""
        return bool(self._rng.random() < self.coin_bias)


def random_product_step(
    plan: SweepPlan,
    problem: FeasibilityProblem,
    x: Vector,
    counters: ProjectionCounter,
) -> Vector:
    """随机乘积的一步：按硬币选择 Q 或 T₂ 作用在 x 上"""
    if plan.kind is not SweepKind.RANDOM_PRODUCT:
        raise InvalidInputError(f"random_product_step 需要随机乘积方案，实际 {plan.kind.value}")
    t1, t2 = plan.operators_for(problem)
    if plan.draw():
        plan.last_choice = "Q"
        return t1.apply(x, counters)
    plan.last_choice = "T2"
    return t2.apply(x, counters)
