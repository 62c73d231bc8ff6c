"""基准测试模块：批量实验、聚合与性能剖面"""

from src.bench.plan import BenchPlan, load_plan
from src.bench.runner import BenchRecord, derive_seeds, run_bench, run_cell
from src.bench.profiles import (
    AggregatedTable,
    PerformanceProfile,
    averaged_times,
    default_tau_grid,
    performance_profile,
    performance_ratios,
)
from src.bench.export import (
    RECORD_COLUMNS,
    TRACE_COLUMNS,
    RecordsCsvWriter,
    export_csv,
    export_operator_log,
    export_profile,
    export_records,
    export_trace,
    read_records,
    read_trace,
)
from src.bench.analysis import iterations_to_accuracy, projections_to_accuracy

__all__ = [
    "BenchPlan",
    "load_plan",
    "BenchRecord",
    "derive_seeds",
    "run_bench",
    "run_cell",
    "AggregatedTable",
    "PerformanceProfile",
    "averaged_times",
    "default_tau_grid",
    "performance_profile",
    "performance_ratios",
    "RECORD_COLUMNS",
    "TRACE_COLUMNS",
    "RecordsCsvWriter",
    "export_csv",
    "export_operator_log",
    "export_profile",
    "export_records",
    "export_trace",
    "read_records",
    "read_trace",
    "iterations_to_accuracy",
    "projections_to_accuracy",
]
