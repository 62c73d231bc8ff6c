"""Error 指标"""
from src.geometry import Vector
from src.problems.model import FeasibilityProblem


def error_metric(problem: FeasibilityProblem, x: Vector) -> float:
    """Error(x) = Σ_i ‖P_{C_i}(x) − x‖

    诊断用途，不计入求解器的投影次数。
    """
    return float(problem.residuals(x).sum())
