"""Douglas-Rachford 类算子

- RSetsDROperator：复合反射 V = R_{C_{r−1}}⋯R_{C_0} 与 r 集合 DR 算子 T = ½(Id + V)
- ComposedProjections：投影乘积 P_{C_0}P_{C_1}⋯P_{C_{m−1}}（最右侧的先作用）
- ProductSpaceDROperator：乘积空间 H^m 中关于 **C** = ∏C_i 与对角集 **D** 的两集合 DR

算子只保存集合的引用，应用过程除计数器外没有副作用。
"""
from typing import Optional, Protocol, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from src.errors import InvalidInputError
from src.geometry import ConvexSet, SetBatch, Vector, check_dimension
from src.operators.counter import ProjectionCounter


class PointOperator(Protocol):
    """作用在 H 上、维护投影计数的算子"""

    def apply(self, x: Vector, counter: ProjectionCounter) -> Vector:
        ...

    def describe(self) -> str:
        ...


def _shared_dimension(sets: Sequence[ConvexSet]) -> int:
    dim = sets[0].dimension
    for i, s in enumerate(sets):
        if s.dimension != dim:
            raise InvalidInputError(f"集合 {i} 维度为 {s.dimension}，与 {dim} 不一致")
    return dim


class RSetsDROperator:
    """r 集合 DR 算子 T_{C_0,…,C_{r−1}}

    Args:
        sets: r ≥ 2 个集合，按 C_0, C_1, … 的顺序（C_0 最先反射）
        indices: 这些集合在问题中的下标，仅用于日志与算子记录
    """

    def __init__(self, sets: Sequence[ConvexSet], indices: Optional[Sequence[int]] = None):
        if len(sets) < 2:
            raise InvalidInputError(f"r 集合 DR 算子至少需要 2 个集合，实际 {len(sets)}")
        self.sets: Tuple[ConvexSet, ...] = tuple(sets)
        self.dimension = _shared_dimension(self.sets)
        self.indices: Optional[Tuple[int, ...]] = tuple(indices) if indices is not None else None
        if self.indices is not None and len(self.indices) != len(self.sets):
            raise InvalidInputError("indices 长度必须与集合个数一致")

    @property
    def r(self) -> int:
        return len(self.sets)

    def composite_reflection(self, x: Vector) -> Vector:
        return apply_composite_reflection(self, x)

    def apply(self, x: Vector, counter: ProjectionCounter) -> Vector:
        return apply_dr(self, x, counter)

    def describe(self) -> str:
        if self.indices is None:
            return f"T(r={self.r})"
        return "T(" + ",".join(str(i) for i in self.indices) + ")"

    def __repr__(self) -> str:
        return f"RSetsDROperator({self.describe()}, n={self.dimension})"


class ComposedProjections:
    """投影乘积 P_{C_0}P_{C_1}⋯P_{C_{m−1}}，先投影到最后一个集合"""

    def __init__(self, sets: Sequence[ConvexSet]):
        if not sets:
            raise InvalidInputError("投影乘积至少需要 1 个集合")
        self.sets: Tuple[ConvexSet, ...] = tuple(sets)
        self.dimension = _shared_dimension(self.sets)

    def apply(self, x: Vector, counter: ProjectionCounter) -> Vector:
        return apply_composed_projections(self, x, counter)

    def describe(self) -> str:
        return f"P(m={len(self.sets)})"


class ProductSpaceDROperator:
    """乘积空间 DR：状态是 (m, n) 数组，第 i 行是第 i 个分量"""

    def __init__(self, sets: Sequence[ConvexSet]):
        self.sets: Tuple[ConvexSet, ...] = tuple(sets)
        self.batch = SetBatch(self.sets)
        self.dimension = self.batch.dimension

    @property
    def m(self) -> int:
        return len(self.sets)

    def initial_state(self, x0: Vector) -> NDArray:
        """把 x0 复制 m 份嵌入 H^m"""
        check_dimension(x0, self.dimension, name="x0")
        return np.tile(x0, (self.m, 1))

    def apply(self, state: NDArray, counter: ProjectionCounter) -> NDArray:
        return apply_product_dr(self, state, counter)


# ==================== 函数式接口 ====================

def apply_composite_reflection(op: RSetsDROperator, x: Vector) -> Vector:
    """V(x) = R_{C_{r−1}}(⋯R_{C_1}(R_{C_0}(x))⋯)"""
    check_dimension(x, op.dimension)
    v = x
    for s in op.sets:
        v = s.reflect(v)
    return v


def apply_dr(op: RSetsDROperator, x: Vector, counter: ProjectionCounter) -> Vector:
    """T(x) = ½(x + V(x))，计数器增加 r"""
    v = apply_composite_reflection(op, x)
    counter.add_projections(op.r)
    return 0.5 * (x + v)


def apply_composed_projections(op: ComposedProjections, x: Vector, counter: ProjectionCounter) -> Vector:
    check_dimension(x, op.dimension)
    y = x
    for s in reversed(op.sets):
        y = s.project(y)
    counter.add_projections(len(op.sets))
    return y


def apply_product_dr(op: ProductSpaceDROperator, state: NDArray, counter: ProjectionCounter) -> NDArray:
    """H^m 中的一步 DR：先关于 **C** 反射，再关于 **D** 反射，最后与输入取平均

    对角投影只是平均，不计入投影次数；**C** 上的逐分量投影计 m 次。
    """
    state = np.asarray(state, dtype=np.float64)
    if state.ndim != 2 or state.shape[0] != op.m:
        raise InvalidInputError(f"乘积空间状态应包含 {op.m} 个分量，实际形状 {state.shape}")
    reflected_c = 2.0 * op.batch.project_rows(state) - state
    average = reflected_c.mean(axis=0)
    reflected_d = 2.0 * average[None, :] - reflected_c
    counter.add_projections(op.m)
    return 0.5 * (state + reflected_d)


def extract_candidate(state: NDArray) -> Vector:
    """乘积空间状态的代表点：分量平均（即到 **D** 的投影）"""
    state = np.asarray(state, dtype=np.float64)
    if state.ndim != 2 or state.shape[0] == 0:
        raise InvalidInputError(f"乘积空间状态不能为空，实际形状 {state.shape}")
    return state.mean(axis=0)
