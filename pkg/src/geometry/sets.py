"""凸集族与精确投影

支持三类集合：
- Ball：闭球 {x : ‖x − c‖ ≤ ρ}
- HalfspaceSlab：对称带状区域 {x : −b ≤ ⟨a, x⟩ ≤ b}
- Hyperplane：超平面 {x : ⟨a, x⟩ = β}

所有集合构造后不可变，投影是纯函数，可以在线程间共享。
"""
from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from src.config.settings import settings
from src.errors import InvalidInputError
from src.geometry.vector import Vector, VectorLike, check_dimension, frozen_vector


class SetKind(str, Enum):
    """集合类型标签（也是问题文件中的 kind 字段）"""
    BALL = "ball"
    SLAB = "slab"
    HYPERPLANE = "hyperplane"


def _unit_normal(normal: VectorLike, name: str = "normal") -> tuple:
    """返回 (单位法向量, 原始范数)

    范数与 1 的偏差在 NORMAL_TOLERANCE 以内时原样保留，
    这样序列化再读回不会改变任何一位。
    """
    a = np.array(normal, dtype=np.float64)
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        raise InvalidInputError(f"{name} 不能是零向量")
    if abs(norm - 1.0) <= settings.NORMAL_TOLERANCE:
        return frozen_vector(a, name=name), 1.0
    return frozen_vector(a / norm, name=name), norm


class ConvexSet(ABC):
    """可投影凸集抽象基类

    子类必须提供精确的度量投影，其余操作（反射、残差）由投影派生。
    """

    kind: SetKind

    @property
    @abstractmethod
    def dimension(self) -> int:
        """所在空间维度"""

    @abstractmethod
    def _project(self, x: Vector) -> Vector:
        """投影实现，调用前已检查维度"""

    @abstractmethod
    def slack(self, point: Vector) -> float:
        """点到边界的带符号余量，正值表示位于内部"""

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """序列化为问题文件中的一条集合记录"""

    def project(self, x: Vector) -> Vector:
        check_dimension(x, self.dimension)
        return self._project(x)

    def reflect(self, x: Vector) -> Vector:
        return 2.0 * self.project(x) - x

    def residual(self, x: Vector) -> float:
        return float(np.linalg.norm(self.project(x) - x))

    def contains(self, x: Vector, tol: Optional[float] = None) -> bool:
        tol = settings.PROJECTION_TOLERANCE if tol is None else tol
        return self.residual(x) <= tol


class Ball(ConvexSet):
    """闭球，半径必须严格为正"""

    kind = SetKind.BALL

    def __init__(self, center: VectorLike, radius: float):
        radius = float(radius)
        if not np.isfinite(radius) or radius <= 0.0:
            raise InvalidInputError(f"球半径必须为正数，实际 {radius}")
        self.center = frozen_vector(center, name="center")
        self.radius = radius

    @property
    def dimension(self) -> int:
        return self.center.shape[0]

    def _project(self, x: Vector) -> Vector:
        d = x - self.center
        dist = float(np.linalg.norm(d))
        if dist <= self.radius:
            return x.copy()
        return self.center + d * (self.radius / dist)

    def slack(self, point: Vector) -> float:
        check_dimension(point, self.dimension, name="point")
        return self.radius - float(np.linalg.norm(point - self.center))

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "center": self.center.tolist(), "radius": self.radius}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Ball)
            and self.radius == other.radius
            and np.array_equal(self.center, other.center)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Ball(n={self.dimension}, radius={self.radius:.6g})"


class HalfspaceSlab(ConvexSet):
    """带状区域 −b ≤ ⟨a, x⟩ ≤ b

    构造时把法向量单位化，同时按同一比例缩放半宽。半宽为 0 时退化为过原点的超平面。
    """

    kind = SetKind.SLAB

    def __init__(self, normal: VectorLike, halfwidth: float):
        halfwidth = float(halfwidth)
        if not np.isfinite(halfwidth) or halfwidth < 0.0:
            raise InvalidInputError(f"带宽必须非负，实际 {halfwidth}")
        self.normal, scale = _unit_normal(normal)
        self.halfwidth = halfwidth / scale

    @property
    def dimension(self) -> int:
        return self.normal.shape[0]

    def _project(self, x: Vector) -> Vector:
        t = float(self.normal @ x)
        clamped = min(max(t, -self.halfwidth), self.halfwidth)
        if clamped == t:
            return x.copy()
        return x + (clamped - t) * self.normal

    def slack(self, point: Vector) -> float:
        check_dimension(point, self.dimension, name="point")
        return self.halfwidth - abs(float(self.normal @ point))

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "normal": self.normal.tolist(), "halfwidth": self.halfwidth}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, HalfspaceSlab)
            and self.halfwidth == other.halfwidth
            and np.array_equal(self.normal, other.normal)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"HalfspaceSlab(n={self.dimension}, halfwidth={self.halfwidth:.6g})"


class Hyperplane(ConvexSet):
    """超平面 ⟨a, x⟩ = β，构造时单位化法向量并缩放偏移"""

    kind = SetKind.HYPERPLANE

    def __init__(self, normal: VectorLike, offset: float = 0.0):
        offset = float(offset)
        if not np.isfinite(offset):
            raise InvalidInputError(f"超平面偏移必须有限，实际 {offset}")
        self.normal, scale = _unit_normal(normal)
        self.offset = offset / scale

    @property
    def dimension(self) -> int:
        return self.normal.shape[0]

    def _project(self, x: Vector) -> Vector:
        return x + (self.offset - float(self.normal @ x)) * self.normal

    def slack(self, point: Vector) -> float:
        check_dimension(point, self.dimension, name="point")
        return -abs(float(self.normal @ point) - self.offset)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "normal": self.normal.tolist(), "offset": self.offset}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Hyperplane)
            and self.offset == other.offset
            and np.array_equal(self.normal, other.normal)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Hyperplane(n={self.dimension}, offset={self.offset:.6g})"


# ==================== 函数式接口 ====================

def project(convex_set: ConvexSet, x: Vector) -> Vector:
    """度量投影 P_C(x)"""
    return convex_set.project(x)


def reflect(convex_set: ConvexSet, x: Vector) -> Vector:
    """反射 R_C(x) = 2 P_C(x) − x"""
    return convex_set.reflect(x)


def membership_residual(convex_set: ConvexSet, x: Vector) -> float:
    """‖P_C(x) − x‖，即点到集合的距离"""
    return convex_set.residual(x)


def set_from_dict(data: Dict[str, Any]) -> ConvexSet:
    """从问题文件记录还原集合（字段已由 schema 校验）"""
    kind = SetKind(data["kind"])
    if kind is SetKind.BALL:
        return Ball(data["center"], data["radius"])
    if kind is SetKind.SLAB:
        return HalfspaceSlab(data["normal"], data["halfwidth"])
    return Hyperplane(data["normal"], data["offset"])
