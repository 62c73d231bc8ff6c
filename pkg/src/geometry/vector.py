"""稠密向量工具

向量统一用一维 float64 的 numpy 数组表示。
"""
from typing import Optional, Sequence, Union

import numpy as np
from numpy.typing import NDArray

from src.errors import InvalidInputError

Vector = NDArray[np.float64]
VectorLike = Union[Sequence[float], NDArray]


def as_vector(values: VectorLike, dim: Optional[int] = None, name: str = "x") -> Vector:
    """转换为一维有限实数向量

    Args:
        values: 任意可转为数组的数值序列
        dim: 期望维度，None 表示不检查
        name: 出错时报告的参数名

    Returns:
        float64 一维数组（不与输入共享内存）
    """
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidInputError(f"{name} 必须是非空一维向量，实际形状 {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} 含有 NaN 或无穷大")
    if dim is not None and arr.size != dim:
        raise InvalidInputError(f"{name} 维度不匹配: 期望 {dim}，实际 {arr.size}")
    return arr


def frozen_vector(values: VectorLike, dim: Optional[int] = None, name: str = "x") -> Vector:
    """与 as_vector 相同，但返回只读数组，用于不可变的集合数据"""
    arr = as_vector(values, dim=dim, name=name)
    arr.flags.writeable = False
    return arr


def check_dimension(x: NDArray, dim: int, name: str = "x") -> None:
    """检查点的维度"""
    if x.ndim != 1 or x.shape[0] != dim:
        raise InvalidInputError(f"{name} 维度不匹配: 期望 {dim}，实际形状 {x.shape}")
