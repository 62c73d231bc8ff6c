"""求解器模块"""

from src.solver.config import SolverConfig, SolverMethod
from src.solver.engine import solve
from src.solver.metrics import error_metric
from src.solver.report import SolveReport, Termination, TraceRow
from src.solver.stopping import StallMonitor, check_termination, relative_change

__all__ = [
    "SolverConfig",
    "SolverMethod",
    "solve",
    "error_metric",
    "SolveReport",
    "Termination",
    "TraceRow",
    "StallMonitor",
    "check_termination",
    "relative_change",
]
