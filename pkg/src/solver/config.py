"""求解器配置"""
import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from src.config.settings import settings
from src.errors import InvalidInputError
from src.problems.model import FeasibilityProblem
from src.schedule import SecondOperator


class SolverMethod(str, Enum):
    """求解方法"""
    CYCLIC = "cyclic"  # 每次迭代一个块 S_{k+1}
    FULL_CYCLE = "full-cycle"  # 每次迭代一个 Q
    SHORT_CYCLE = "short-cycle"  # 每次迭代一个 Q̃
    PRODUCT_SPACE = "product-space"  # 乘积空间 DR
    RANDOM_PRODUCT = "random-product"  # Q 与 T₂ 的随机乘积


class SolverConfig(BaseModel):
    """一次求解的配置

    stall_window 为 None 时按方法取默认值：乘积空间 DR 取 1，其余取 ⌈m/r⌉。
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    method: SolverMethod = SolverMethod.CYCLIC
    r: int = Field(default=2, ge=2)
    epsilon: float = Field(default_factory=lambda: settings.SOLVER_EPSILON, gt=0)
    max_iterations: int = Field(default_factory=lambda: settings.SOLVER_MAX_ITERATIONS, ge=1)
    stall_window: Optional[int] = Field(default=None, ge=1)
    trace_every: int = Field(default_factory=lambda: settings.SOLVER_TRACE_EVERY, ge=1)
    rng_seed: int = Field(default=0, ge=0, lt=2**64)
    coin_bias: float = Field(default=0.5, ge=0.0, le=1.0)
    second_operator: SecondOperator = SecondOperator.PROJECTIONS
    log_operators: bool = False
    name: Optional[str] = None

    @property
    def label(self) -> str:
        """求解器标识，用于基准记录与性能剖面的列名"""
        if self.name:
            return self.name
        if self.method is SolverMethod.PRODUCT_SPACE:
            return self.method.value
        return f"{self.method.value}-r{self.r}"

    def resolved_stall_window(self, m: int) -> int:
        if self.stall_window is not None:
            return self.stall_window
        if self.method is SolverMethod.PRODUCT_SPACE:
            return 1
        return math.ceil(m / self.r)

    def validate_for(self, problem: FeasibilityProblem) -> None:
        """检查配置与问题是否兼容

        Raises:
            InvalidInputError: r > m，或短循环时 (r−1) 不整除 m
        """
        if self.method is SolverMethod.PRODUCT_SPACE:
            return
        if self.r > problem.m:
            raise InvalidInputError(f"块大小 r={self.r} 不能超过集合个数 m={problem.m}")
        if self.method is SolverMethod.SHORT_CYCLE and problem.m % (self.r - 1) != 0:
            raise InvalidInputError(
                f"短循环 Q̃ 要求 (r−1) 整除 m：r−1={self.r - 1} 不整除 m={problem.m}"
            )
