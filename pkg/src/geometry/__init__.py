"""几何模块：向量运算、凸集投影与反射"""

from src.geometry.vector import Vector, as_vector, check_dimension, frozen_vector
from src.geometry.sets import (
    Ball,
    ConvexSet,
    HalfspaceSlab,
    Hyperplane,
    SetKind,
    membership_residual,
    project,
    reflect,
    set_from_dict,
)
from src.geometry.batch import SetBatch

__all__ = [
    "Vector",
    "as_vector",
    "check_dimension",
    "frozen_vector",
    "Ball",
    "ConvexSet",
    "HalfspaceSlab",
    "Hyperplane",
    "SetKind",
    "membership_residual",
    "project",
    "reflect",
    "set_from_dict",
    "SetBatch",
]
