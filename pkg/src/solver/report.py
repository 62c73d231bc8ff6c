"""求解结果"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

from src.geometry import Vector
from src.operators import ProjectionCounter
from src.solver.config import SolverConfig


class Termination(str, Enum):
    """终止原因"""
    CONVERGED = "converged"
    MAX_ITERATIONS = "max-iterations"
    NUMERICAL_FAILURE = "numerical-failure"


class TraceRow(NamedTuple):
    """Error 轨迹的一行"""
    iteration: int
    projections: int
    error: float
    elapsed_s: float


@dataclass
class SolveReport:
    """一次求解的完整记录"""

    final_point: Vector
    termination: Termination
    counters: ProjectionCounter
    error_trace: List[TraceRow]
    wall_time_s: float
    final_error: float
    config: SolverConfig
    seeds: Dict[str, Any] = field(default_factory=dict)
    operator_log: List[Tuple[int, str]] = field(default_factory=list)
    fixed_point_gap: Optional[float] = None

    @property
    def converged(self) -> bool:
        return self.termination is Termination.CONVERGED

    def summary(self) -> Dict[str, Any]:
        return {
            "solver": self.config.label,
            "termination": self.termination.value,
            "iterations": self.counters.iterations,
            "projections": self.counters.projections,
            "final_error": self.final_error,
            "wall_time_s": self.wall_time_s,
            "seeds": self.seeds,
        }
