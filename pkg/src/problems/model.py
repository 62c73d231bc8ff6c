"""可行性问题数据模型"""
import hashlib
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from src.config.settings import settings
from src.errors import ProblemValidationError
from src.geometry import ConvexSet, SetBatch, Vector, check_dimension

# 生成器身份写入文件元数据，保证跨版本可追溯
GENERATOR_ID = "numpy.PCG64+SeedSequence"

Range = Tuple[float, float]


class ProblemFamily(str, Enum):
    """问题族"""
    LINEAR = "linear"  # 带状线性不等式组
    QUADRATIC = "quadratic"  # 包含原点的球
    CUSTOM = "custom"


class GeneratorParams(BaseModel):
    """随机问题生成参数，默认值与实验设定一致"""

    n: int = Field(default_factory=lambda: settings.DEFAULT_DIMENSION, ge=1)
    m: int = Field(default=1, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    normal_range: Range = (-1.0, 1.0)
    halfwidth_range: Range = (0.0, 0.1)
    center_range: Range = (-5.0, 5.0)
    slack_range: Range = (0.0, 0.1)
    x0_range: Range = (-10.0, 10.0)

    @model_validator(mode="after")
    def _check_ranges(self):
        for name in ("normal_range", "halfwidth_range", "center_range", "slack_range", "x0_range"):
            low, high = getattr(self, name)
            if not low < high:
                raise ValueError(f"{name} 需要 low < high，实际 ({low}, {high})")
        for name in ("halfwidth_range", "slack_range"):
            if getattr(self, name)[1] <= 0.0:
                raise ValueError(f"{name} 上界必须为正，否则无法保证原点位于内部")
        return self


@dataclass(frozen=True, eq=False)
class FeasibilityProblem:
    """凸可行性问题：求 x ∈ ∩ C_i

    Attributes:
        dimension: 空间维度 n
        sets: m 个凸集（顺序即下标 0..m−1）
        family: 问题族
        seed: 生成种子（自定义问题为 None）
        params: 生成参数
    """

    dimension: int
    sets: Tuple[ConvexSet, ...]
    family: ProblemFamily = ProblemFamily.CUSTOM
    seed: Optional[int] = None
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))
        object.__setattr__(self, "family", ProblemFamily(self.family))
        if self.dimension < 1:
            raise ProblemValidationError(f"维度必须 ≥ 1，实际 {self.dimension}")
        if not self.sets:
            raise ProblemValidationError("问题至少需要一个集合")
        for i, s in enumerate(self.sets):
            if s.dimension != self.dimension:
                raise ProblemValidationError(
                    f"集合 {i} 维度为 {s.dimension}，与问题维度 {self.dimension} 不一致"
                )

    @property
    def m(self) -> int:
        return len(self.sets)

    @cached_property
    def batch(self) -> SetBatch:
        return SetBatch(self.sets)

    def residuals(self, x: Vector) -> Any:
        check_dimension(x, self.dimension)
        return self.batch.residuals(x)

    def interior_slack(self, point: Vector) -> float:
        """点相对全部集合的最小余量，正值说明点在交集内部"""
        return min(s.slack(point) for s in self.sets)

    def fingerprint(self) -> str:
        from src.problems.serialization import problem_to_json

        return hashlib.sha256(problem_to_json(self).encode("utf-8")).hexdigest()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FeasibilityProblem):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and self.family == other.family
            and self.seed == other.seed
            and self.params == other.params
            and len(self.sets) == len(other.sets)
            and all(a == b for a, b in zip(self.sets, other.sets))
        )

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"FeasibilityProblem(family={self.family.value}, n={self.dimension}, "
            f"m={self.m}, seed={self.seed})"
        )
