"""平均耗时、性能比与性能剖面

- t_{p,s}：求解器 s 在问题 p（问题族 + m）上各次重复的平均值
- r_{p,s} = t_{p,s} / min_s t_{p,s}
- π_s(τ) = |{p : r_{p,s} ≤ τ}| / |P|
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd
from loguru import logger

from src.bench.runner import BenchRecord
from src.config.settings import settings
from src.errors import InvalidInputError, MissingCellsError

METRIC_COLUMNS = {
    "time": "wall_time_s",
    "wall_time_s": "wall_time_s",
    "projections": "projections",
    "iterations": "iterations",
}


@dataclass
class AggregatedTable:
    """按 (问题, 求解器) 聚合的结果

    values 的行是问题、列是求解器；failures 同形状，记录未收敛次数。
    """
    values: pd.DataFrame
    failures: pd.DataFrame
    metric: str


@dataclass
class PerformanceProfile:
    """性能剖面，values 的行是 τ、列是求解器"""
    taus: np.ndarray
    values: pd.DataFrame
    ratios: pd.DataFrame

    @property
    def solvers(self) -> List[str]:
        return list(self.values.columns)

    def at(self, solver: str, tau: float) -> float:
        """右连续阶梯函数在任意 τ 处的取值"""
        return float((self.ratios[solver] <= tau).mean())


def records_frame(records: Sequence[BenchRecord]) -> pd.DataFrame:
    frame = pd.DataFrame([r.to_dict() for r in records])
    if frame.empty:
        return frame
    frame["problem"] = frame["family"].astype(str) + "-m" + frame["m"].astype(str)
    return frame


def averaged_times(records: Sequence[BenchRecord], metric: str = "time") -> AggregatedTable:
    """对每个 (问题, 求解器) 取收敛运行的算术平均

    失败运行不计入平均，失败次数放在 failures 中。

    Raises:
        MissingCellsError: 某个 (问题, 求解器) 没有任何收敛运行
    """
    if metric not in METRIC_COLUMNS:
        raise InvalidInputError(f"未知指标: {metric}，可选 {sorted(METRIC_COLUMNS)}")
    column = METRIC_COLUMNS[metric]
    frame = records_frame(records)
    if frame.empty:
        raise InvalidInputError("没有任何基准记录")

    problems = list(dict.fromkeys(frame["problem"]))
    solvers = list(dict.fromkeys(frame["solver"]))
    succeeded = frame[frame["termination"] == "converged"]

    values = (
        succeeded.groupby(["problem", "solver"])[column].mean().unstack("solver")
        .reindex(index=problems, columns=solvers)
    )
    failures = (
        frame.assign(failed=frame["termination"] != "converged")
        .groupby(["problem", "solver"])["failed"].sum().unstack("solver")
        .reindex(index=problems, columns=solvers)
        .fillna(0).astype(int)
    )

    missing = [(p, s) for p in problems for s in solvers if pd.isna(values.at[p, s])]
    if missing:
        raise MissingCellsError(missing)

    total_failures = int(failures.values.sum())
    if total_failures:
        logger.warning(f"⚠️ 共有 {total_failures} 次运行未收敛，已从平均中排除")
    return AggregatedTable(values=values.astype(float), failures=failures, metric=column)


def performance_ratios(table: pd.DataFrame) -> pd.DataFrame:
    """r_{p,s} = t_{p,s} / min_s t_{p,s}"""
    if table.empty:
        raise InvalidInputError("性能表为空")
    data = table.to_numpy(dtype=float)
    if not np.all(np.isfinite(data)) or np.any(data <= 0.0):
        raise InvalidInputError("性能表中存在非正或非有限的值，无法计算性能比")
    return table.div(table.min(axis=1), axis=0)


def default_tau_grid(ratios: pd.DataFrame, points: Optional[int] = None) -> np.ndarray:
    """从 1 到最大性能比的对数等距网格"""
    if points is None:
        points = settings.PROFILE_TAU_POINTS
    if points < 2:
        raise InvalidInputError(f"τ 网格至少需要 2 个点，实际 {points}")
    tau_max = float(ratios.to_numpy(dtype=float).max())
    grid = np.geomspace(1.0, max(tau_max, 1.0), points)
    grid[0], grid[-1] = 1.0, max(tau_max, 1.0)
    return np.unique(grid)


def performance_profile(
    ratios: pd.DataFrame,
    taus: Optional[Sequence[float]] = None,
) -> PerformanceProfile:
    """在 τ 网格上计算每个求解器的 π_s(τ)"""
    if ratios.empty or len(ratios.index) == 0:
        raise InvalidInputError("问题集合为空，无法计算性能剖面")
    grid = default_tau_grid(ratios) if taus is None else np.asarray(taus, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise InvalidInputError("τ 网格必须是非空一维序列")
    if np.any(grid < 1.0) or np.any(np.diff(grid) < 0):
        raise InvalidInputError("τ 网格必须升序且位于 [1, τ_max]")

    data = ratios.to_numpy(dtype=float)
    fractions = (data[None, :, :] <= grid[:, None, None]).mean(axis=1)
    values = pd.DataFrame(fractions, index=pd.Index(grid, name="tau"), columns=ratios.columns)
    return PerformanceProfile(taus=grid, values=values, ratios=ratios)
