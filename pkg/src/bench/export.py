"""CSV 导出与读回

列顺序固定（见 docs/csv_schemas.md）：
- records.csv: family,m,n,solver,rep,seed,wall_time_s,iterations,projections,final_error,termination
- profile.csv: tau,<每个求解器一列>
- trace.csv:   iteration,projections,error,elapsed_s
浮点数以最短可回读形式写出，读回时使用 round_trip 精度。
"""
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple, Union

import pandas as pd
from loguru import logger

from src.bench.profiles import PerformanceProfile
from src.bench.runner import BenchRecord
from src.errors import ExportError, InvalidInputError, ProblemParseError
from src.solver.report import TraceRow

PathLike = Union[str, Path]

RECORD_COLUMNS = [
    "family", "m", "n", "solver", "rep", "seed",
    "wall_time_s", "iterations", "projections", "final_error", "termination",
]
TRACE_COLUMNS = ["iteration", "projections", "error", "elapsed_s"]
OPERATOR_LOG_COLUMNS = ["iteration", "operator"]


def _write(frame: pd.DataFrame, path: PathLike, append: bool = False) -> None:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, mode="a" if append else "w", header=not append)
    except OSError as e:
        raise ExportError(path, e) from e


def _read(path: PathLike, **kwargs) -> pd.DataFrame:
    try:
        return pd.read_csv(path, float_precision="round_trip", **kwargs)
    except OSError as e:
        raise ExportError(path, e) from e
    except (pd.errors.EmptyDataError, pd.errors.ParserError, UnicodeDecodeError) as e:
        raise ProblemParseError(f"CSV 文件无法解析: {path}: {e}") from e


def _records_frame(records: Iterable[BenchRecord]) -> pd.DataFrame:
    rows = [{c: getattr(r, c) for c in RECORD_COLUMNS} for r in records]
    return pd.DataFrame(rows, columns=RECORD_COLUMNS)


def export_records(records: Sequence[BenchRecord], path: PathLike) -> Path:
    _write(_records_frame(records), path)
    logger.info(f"💾 已写出 {len(records)} 条记录: {path}")
    return Path(path)


def read_records(path: PathLike) -> List[BenchRecord]:
    frame = _read(path, dtype={"family": str, "solver": str, "termination": str})
    missing = [c for c in RECORD_COLUMNS if c not in frame.columns]
    if missing:
        raise InvalidInputError(f"记录文件 {path} 缺少列: {missing}")
    return [
        BenchRecord(
            family=row.family,
            m=int(row.m),
            n=int(row.n),
            solver=row.solver,
            rep=int(row.rep),
            seed=int(row.seed),
            wall_time_s=float(row.wall_time_s),
            iterations=int(row.iterations),
            projections=int(row.projections),
            final_error=float(row.final_error),
            termination=row.termination,
        )
        for row in frame.itertuples(index=False)
    ]


class RecordsCsvWriter:
    """逐单元追加写出记录，中断时文件中只包含已完成的行"""

    def __init__(self, path: PathLike):
        self.path = Path(path)
        _write(pd.DataFrame(columns=RECORD_COLUMNS), self.path)
        self.rows = 0

    def append(self, records: Sequence[BenchRecord]) -> None:
        if not records:
            return
        _write(_records_frame(records), self.path, append=True)
        self.rows += len(records)


def export_profile(profile: PerformanceProfile, path: PathLike) -> Path:
    frame = profile.values.reset_index()
    frame.columns = ["tau"] + list(profile.values.columns)
    _write(frame, path)
    logger.info(f"💾 已写出性能剖面 ({len(frame)} 个 τ 点): {path}")
    return Path(path)


def export_trace(trace: Sequence[TraceRow], path: PathLike) -> Path:
    _write(pd.DataFrame([tuple(r) for r in trace], columns=TRACE_COLUMNS), path)
    return Path(path)


def read_trace(path: PathLike) -> List[TraceRow]:
    frame = _read(path)
    return [
        TraceRow(int(r.iteration), int(r.projections), float(r.error), float(r.elapsed_s))
        for r in frame.itertuples(index=False)
    ]


def export_operator_log(log: Sequence[Tuple[int, str]], path: PathLike) -> Path:
    _write(pd.DataFrame(list(log), columns=OPERATOR_LOG_COLUMNS), path)
    return Path(path)


def export_csv(data, path: PathLike) -> Path:
    """按数据类型分派：记录列表、性能剖面或 Error 轨迹"""
    if isinstance(data, PerformanceProfile):
        return export_profile(data, path)
    items = list(data)
    if items and isinstance(items[0], BenchRecord):
        return export_records(items, path)
    if items and isinstance(items[0], TraceRow):
        return export_trace(items, path)
    raise InvalidInputError(f"不支持导出的数据类型: {type(data).__name__}")
