"""基准测试执行

每个单元 (族, m, 重复) 生成一个问题和一个初始点，所有求解器在同一实例上运行。
单元之间相互独立，可以并行；结果顺序与串行一致。
"""
import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from loguru import logger

from src.bench.plan import BenchPlan, Cell
from src.errors import InvalidInputError
from src.problems import GeneratorParams, ProblemFamily, generate_problem, generate_x0
from src.solver import solve

# 问题族在种子派生中的固定编号
_FAMILY_KEYS: Dict[ProblemFamily, int] = {
    ProblemFamily.LINEAR: 0,
    ProblemFamily.QUADRATIC: 1,
}

INVALID_CONFIG = "invalid-config"
SOLVER_ERROR = "error"


@dataclass
class BenchRecord:
    """一条基准记录（一个单元、一次重复、一个求解器）"""

    family: str
    m: int
    n: int
    solver: str
    rep: int
    seed: int
    wall_time_s: float
    iterations: int
    projections: int
    final_error: float
    termination: str
    x0_seed: int = 0
    problem_hash: str = ""
    x0_hash: str = ""

    @property
    def problem_key(self) -> str:
        return f"{self.family}-m{self.m}"

    @property
    def succeeded(self) -> bool:
        return self.termination == "converged"

    def to_dict(self) -> dict:
        return asdict(self)


def derive_seeds(base_seed: int, family: ProblemFamily, m: int, rep: int) -> Tuple[int, int]:
    """(问题种子, 初始点种子)，是 (base_seed, family, m, rep) 的纯函数"""
    sequence = np.random.SeedSequence(
        entropy=base_seed, spawn_key=(_FAMILY_KEYS[ProblemFamily(family)], m, rep)
    )
    problem_seed, x0_seed = sequence.generate_state(2, dtype=np.uint64)
    return int(problem_seed), int(x0_seed)


def run_cell(plan: BenchPlan, cell: Cell) -> List[BenchRecord]:
    """运行一个单元中的全部求解器"""
    family, m, rep = cell
    problem_seed, x0_seed = derive_seeds(plan.base_seed, family, m, rep)
    problem = generate_problem(family, GeneratorParams(n=plan.n, m=m, seed=problem_seed))
    x0 = generate_x0(GeneratorParams(n=plan.n, m=m, seed=x0_seed))
    problem_hash = problem.fingerprint()
    x0_hash = hashlib.sha256(x0.tobytes()).hexdigest()

    records: List[BenchRecord] = []
    for config in plan.solvers:
        base = dict(
            family=ProblemFamily(family).value,
            m=m,
            n=plan.n,
            solver=config.label,
            rep=rep,
            seed=problem_seed,
            x0_seed=x0_seed,
            problem_hash=problem_hash,
            x0_hash=x0_hash,
        )
        try:
            report = solve(problem, config, x0, seeds={"problem": problem_seed, "x0": x0_seed})
        except InvalidInputError as e:
            logger.warning(f"⚠️ 跳过 {config.label} @ {family}-m{m}: {e}")
            records.append(BenchRecord(**base, wall_time_s=float("nan"), iterations=0,
                                       projections=0, final_error=float("nan"),
                                       termination=INVALID_CONFIG))
            continue
        except Exception as e:
            logger.error(f"❌ 求解失败 {config.label} @ {family}-m{m} rep={rep}: {e}")
            records.append(BenchRecord(**base, wall_time_s=float("nan"), iterations=0,
                                       projections=0, final_error=float("nan"),
                                       termination=SOLVER_ERROR))
            continue
        records.append(
            BenchRecord(
                **base,
                wall_time_s=report.wall_time_s,
                iterations=report.counters.iterations,
                projections=report.counters.projections,
                final_error=report.final_error,
                termination=report.termination.value,
            )
        )
    return records


def _run_cell_task(args: Tuple[BenchPlan, Cell]) -> List[BenchRecord]:
    plan, cell = args
    return run_cell(plan, cell)


def run_bench(
    plan: BenchPlan,
    parallel: int = 1,
    on_cell: Optional[Callable[[Cell, List[BenchRecord]], None]] = None,
) -> List[BenchRecord]:
    """执行整个计划

    Args:
        plan: 基准计划
        parallel: 并行进程数，1 表示串行
        on_cell: 每个单元完成后按计划顺序回调，用于逐行落盘与进度显示

    Returns:
        全部记录，顺序与并行度无关
    """
    cells = list(plan.cells())
    logger.info(
        f"📊 开始基准测试: {len(cells)} 个单元 × {len(plan.solvers)} 个求解器, "
        f"base_seed={plan.base_seed}, 并行={parallel}"
    )
    records: List[BenchRecord] = []

    def collect(cell: Cell, cell_records: List[BenchRecord]) -> None:
        records.extend(cell_records)
        if on_cell is not None:
            on_cell(cell, cell_records)

    if parallel <= 1:
        for cell in cells:
            collect(cell, run_cell(plan, cell))
    else:
        with ProcessPoolExecutor(max_workers=parallel) as executor:
            results = executor.map(_run_cell_task, [(plan, cell) for cell in cells])
            for cell, cell_records in zip(cells, results):
                collect(cell, cell_records)

    converged = sum(r.succeeded for r in records)
    logger.success(f"✅ 基准测试完成: {len(records)} 条记录, 收敛 {converged} 条")
    return records
