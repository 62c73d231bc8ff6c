"""精度-投影次数分析（按 Error 首次达到阈值统计）"""
from typing import Optional, Sequence

from src.solver.report import TraceRow


def projections_to_accuracy(trace: Sequence[TraceRow], threshold: float) -> Optional[int]:
    """第一条 Error ≤ threshold 的轨迹行对应的投影次数，未达到返回 None"""
    for row in trace:
        if row.error <= threshold:
            return row.projections
    return None


def iterations_to_accuracy(trace: Sequence[TraceRow], threshold: float) -> Optional[int]:
    for row in trace:
        if row.error <= threshold:
            return row.iteration
    return None
