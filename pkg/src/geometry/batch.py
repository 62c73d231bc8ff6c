"""按集合族堆叠的批量投影

乘积空间 DR 需要把 (m, n) 的状态逐行投影到各自的集合上，
Error 指标需要一个点到全部 m 个集合的距离。两者都按集合类型分组后用一次 numpy 运算完成。
"""
from typing import List, Sequence

import numpy as np
from numpy.typing import NDArray

from src.errors import InvalidInputError
from src.geometry.sets import Ball, ConvexSet, HalfspaceSlab, Hyperplane
from src.geometry.vector import Vector, check_dimension


class SetBatch:
    """m 个集合的堆叠表示

    Attributes:
        size: 集合个数 m
        dimension: 空间维度 n
    """

    def __init__(self, sets: Sequence[ConvexSet]):
        if not sets:
            raise InvalidInputError("集合列表不能为空")
        self.size = len(sets)
        self.dimension = sets[0].dimension

        ball_idx: List[int] = []
        slab_idx: List[int] = []
        plane_idx: List[int] = []
        for i, s in enumerate(sets):
            if s.dimension != self.dimension:
                raise InvalidInputError(f"集合 {i} 维度为 {s.dimension}，与 {self.dimension} 不一致")
            if isinstance(s, Ball):
                ball_idx.append(i)
            elif isinstance(s, HalfspaceSlab):
                slab_idx.append(i)
            elif isinstance(s, Hyperplane):
                plane_idx.append(i)
            else:
                raise InvalidInputError(f"不支持批量投影的集合类型: {type(s).__name__}")

        self._ball_idx = np.array(ball_idx, dtype=np.intp)
        self._centers = np.array([sets[i].center for i in ball_idx]).reshape(-1, self.dimension)
        self._radii = np.array([sets[i].radius for i in ball_idx], dtype=np.float64)

        self._slab_idx = np.array(slab_idx, dtype=np.intp)
        self._slab_normals = np.array([sets[i].normal for i in slab_idx]).reshape(-1, self.dimension)
        self._halfwidths = np.array([sets[i].halfwidth for i in slab_idx], dtype=np.float64)

        self._plane_idx = np.array(plane_idx, dtype=np.intp)
        self._plane_normals = np.array([sets[i].normal for i in plane_idx]).reshape(-1, self.dimension)
        self._offsets = np.array([sets[i].offset for i in plane_idx], dtype=np.float64)

    def project_rows(self, points: NDArray) -> NDArray:
        """第 i 行投影到第 i 个集合上"""
        if points.shape != (self.size, self.dimension):
            raise InvalidInputError(
                f"状态形状不匹配: 期望 {(self.size, self.dimension)}，实际 {points.shape}"
            )
        out = points.copy()

        if self._ball_idx.size:
            rows = points[self._ball_idx]
            diff = rows - self._centers
            dist = np.linalg.norm(diff, axis=1)
            outside = dist > self._radii
            scale = np.divide(self._radii, dist, out=np.ones_like(dist), where=outside)
            projected = self._centers + diff * scale[:, None]
            out[self._ball_idx] = np.where(outside[:, None], projected, rows)

        if self._slab_idx.size:
            rows = points[self._slab_idx]
            t = np.einsum("ij,ij->i", self._slab_normals, rows)
            shift = np.clip(t, -self._halfwidths, self._halfwidths) - t
            out[self._slab_idx] = rows + shift[:, None] * self._slab_normals

        if self._plane_idx.size:
            rows = points[self._plane_idx]
            t = np.einsum("ij,ij->i", self._plane_normals, rows)
            out[self._plane_idx] = rows + (self._offsets - t)[:, None] * self._plane_normals

        return out

    def residuals(self, x: Vector) -> NDArray:
        """点 x 到每个集合的距离 ‖P_{C_i}(x) − x‖"""
        check_dimension(x, self.dimension)
        res = np.zeros(self.size, dtype=np.float64)
        if self._ball_idx.size:
            dist = np.linalg.norm(x - self._centers, axis=1)
            res[self._ball_idx] = np.maximum(dist - self._radii, 0.0)
        if self._slab_idx.size:
            t = self._slab_normals @ x
            res[self._slab_idx] = np.maximum(np.abs(t) - self._halfwidths, 0.0)
        if self._plane_idx.size:
            res[self._plane_idx] = np.abs(self._plane_normals @ x - self._offsets)
        return res
