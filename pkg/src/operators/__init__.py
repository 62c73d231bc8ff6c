"""算子模块：复合反射、r 集合 DR、投影乘积与乘积空间 DR"""

from src.operators.counter import ProjectionCounter
from src.operators.dr_operators import (
    ComposedProjections,
    PointOperator,
    ProductSpaceDROperator,
    RSetsDROperator,
    apply_composed_projections,
    apply_composite_reflection,
    apply_dr,
    apply_product_dr,
    extract_candidate,
)

__all__ = [
    "ProjectionCounter",
    "ComposedProjections",
    "PointOperator",
    "ProductSpaceDROperator",
    "RSetsDROperator",
    "apply_composed_projections",
    "apply_composite_reflection",
    "apply_dr",
    "apply_product_dr",
    "extract_candidate",
]
