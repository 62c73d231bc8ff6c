"""命令行入口

子命令：
    gen      生成随机问题文件
    solve    求解问题文件
    bench    按计划批量运行并写出 records.csv
    profile  由 records.csv 计算性能剖面

退出码：0 成功/收敛，1 I/O 错误，2 用法错误，3 达到最大迭代次数，4 数值失败
"""
import argparse
import json
import sys
from typing import List, Optional

from loguru import logger
from pydantic import ValidationError
from tqdm import tqdm

from src.bench import (
    RecordsCsvWriter,
    averaged_times,
    default_tau_grid,
    export_operator_log,
    export_profile,
    export_trace,
    load_plan,
    performance_profile,
    performance_ratios,
    read_records,
    run_bench,
)
from src.config import settings, setup_logger
from src.errors import InvalidInputError
from src.geometry import as_vector
from src.problems import (
    GeneratorParams,
    ProblemFamily,
    generate_problem,
    generate_x0,
    load_problem,
    save_problem,
)
from src.schedule import SecondOperator
from src.solver import SolverConfig, SolverMethod, Termination, solve

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_MAX_ITERATIONS = 3
EXIT_NUMERICAL_FAILURE = 4

TERMINATION_EXIT_CODES = {
    Termination.CONVERGED: EXIT_OK,
    Termination.MAX_ITERATIONS: EXIT_MAX_ITERATIONS,
    Termination.NUMERICAL_FAILURE: EXIT_NUMERICAL_FAILURE,
}


class UsageError(Exception):
    """参数组合不合法"""


def _print_summary(summary: dict) -> None:
    print(json.dumps(summary, ensure_ascii=False, indent=2))


# ==================== 子命令 ====================

def cmd_gen(args: argparse.Namespace) -> int:
    try:
        params = GeneratorParams(n=args.n, m=args.m, seed=args.seed)
    except ValidationError as e:
        raise UsageError(str(e)) from e
    problem = generate_problem(ProblemFamily(args.family), params)
    save_problem(problem, args.out)
    origin = as_vector([0.0] * problem.dimension)
    _print_summary(
        {
            "family": problem.family.value,
            "n": problem.dimension,
            "m": problem.m,
            "seed": problem.seed,
            "interior_slack_min": problem.interior_slack(origin),
            "out": str(args.out),
        }
    )
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    problem = load_problem(args.problem)
    try:
        config = SolverConfig(
            method=SolverMethod(args.method),
            r=args.r,
            epsilon=args.eps,
            max_iterations=args.max_iters,
            stall_window=args.stall_window,
            trace_every=args.trace_every,
            rng_seed=args.rng_seed,
            coin_bias=args.coin_bias,
            second_operator=SecondOperator(args.second_operator),
            log_operators=args.operator_log is not None,
        )
        config.validate_for(problem)
        x0 = generate_x0(GeneratorParams(n=problem.dimension, m=problem.m, seed=args.x0_seed))
    except (ValidationError, InvalidInputError) as e:
        raise UsageError(str(e)) from e

    seeds = {"problem": problem.seed, "x0": args.x0_seed, "rng": args.rng_seed}
    report = solve(problem, config, x0, seeds=seeds)

    if args.trace:
        export_trace(report.error_trace, args.trace)
    if args.operator_log:
        export_operator_log(report.operator_log, args.operator_log)

    _print_summary(report.summary())
    return TERMINATION_EXIT_CODES[report.termination]


def cmd_bench(args: argparse.Namespace) -> int:
    plan = load_plan(args.plan)
    writer = RecordsCsvWriter(args.out)
    total = len(list(plan.cells()))

    with tqdm(total=total, desc="bench", unit="cell") as progress:
        def on_cell(cell, records):
            writer.append(records)
            family, m, rep = cell
            progress.set_postfix_str(f"{family.value} m={m} rep={rep}")
            progress.update(1)

        records = run_bench(plan, parallel=args.parallel, on_cell=on_cell)

    _print_summary(
        {
            "records": len(records),
            "converged": sum(r.succeeded for r in records),
            "base_seed": plan.base_seed,
            "out": str(args.out),
        }
    )
    return EXIT_OK


def cmd_profile(args: argparse.Namespace) -> int:
    records = read_records(args.records)
    if args.family:
        records = [r for r in records if r.family == args.family]
    table = averaged_times(records, metric=args.metric)
    ratios = performance_ratios(table.values)
    profile = performance_profile(ratios, default_tau_grid(ratios, args.tau_points))
    export_profile(profile, args.out)

    best = {s: profile.at(s, 1.0) for s in profile.solvers}
    for solver, value in best.items():
        logger.info(f"π_{solver}(1) = {value:.4f}")
    _print_summary({"metric": args.metric, "problems": len(ratios.index), "pi_at_1": best, "out": str(args.out)})
    return EXIT_OK


# ==================== 参数解析 ====================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drcfp",
        description=f"{settings.APP_NAME}：循环 r 集合 Douglas-Rachford 凸可行性求解器",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.APP_VERSION}")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="日志级别")
    subparsers = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    gen = subparsers.add_parser("gen", help="生成随机问题文件", formatter_class=fmt)
    gen.add_argument("--family", required=True, choices=["linear", "quadratic"], help="问题族")
    gen.add_argument("--n", type=int, default=settings.DEFAULT_DIMENSION, help="空间维度")
    gen.add_argument("--m", type=int, required=True, help="集合个数")
    gen.add_argument("--seed", type=int, default=0, help="生成种子")
    gen.add_argument("--out", required=True, help="输出问题文件路径 (JSON)")
    gen.set_defaults(handler=cmd_gen)

    sol = subparsers.add_parser("solve", help="求解问题文件", formatter_class=fmt)
    sol.add_argument("--problem", required=True, help="问题文件路径")
    sol.add_argument("--method", default=SolverMethod.CYCLIC.value,
                     choices=[m.value for m in SolverMethod], help="求解方法")
    sol.add_argument("--r", type=int, default=2, help="块大小 r")
    sol.add_argument("--eps", type=float, default=settings.SOLVER_EPSILON, help="相对变化停止阈值")
    sol.add_argument("--max-iters", type=int, default=settings.SOLVER_MAX_ITERATIONS, help="最大迭代次数")
    sol.add_argument("--x0-seed", type=int, default=0, help="初始点种子")
    sol.add_argument("--stall-window", type=int, default=None,
                     help="连续满足停止准则的步数（默认 ⌈m/r⌉，乘积空间为 1）")
    sol.add_argument("--trace-every", type=int, default=settings.SOLVER_TRACE_EVERY, help="Error 记录间隔")
    sol.add_argument("--rng-seed", type=int, default=0, help="随机乘积的硬币种子")
    sol.add_argument("--coin-bias", type=float, default=0.5, help="随机乘积选择 Q 的概率")
    sol.add_argument("--second-operator", default=SecondOperator.PROJECTIONS.value,
                     choices=[s.value for s in SecondOperator], help="随机乘积中的 T2")
    sol.add_argument("--trace", default=None, help="Error 轨迹 CSV 输出路径")
    sol.add_argument("--operator-log", default=None, help="逐次迭代所用算子的 CSV 输出路径")
    sol.set_defaults(handler=cmd_solve)

    bench = subparsers.add_parser("bench", help="按计划批量运行", formatter_class=fmt)
    bench.add_argument("--plan", required=True, help="基准计划 JSON 文件（repetitions 默认 "
                       f"{settings.BENCH_REPETITIONS}）")
    bench.add_argument("--out", required=True, help="records.csv 输出路径")
    bench.add_argument("--parallel", type=int, default=settings.BENCH_WORKERS, help="并行进程数")
    bench.set_defaults(handler=cmd_bench)

    prof = subparsers.add_parser("profile", help="计算性能剖面", formatter_class=fmt)
    prof.add_argument("--records", required=True, help="records.csv 路径")
    prof.add_argument("--metric", default="time", choices=["time", "projections"], help="比较指标")
    prof.add_argument("--out", required=True, help="profile.csv 输出路径")
    prof.add_argument("--family", default=None, choices=["linear", "quadratic"], help="只使用某一问题族")
    prof.add_argument("--tau-points", type=int, default=settings.PROFILE_TAU_POINTS, help="τ 网格点数")
    prof.set_defaults(handler=cmd_profile)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logger(args.log_level)
    try:
        return args.handler(args)
    except UsageError as e:
        logger.error(f"❌ 参数错误: {e}")
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except InvalidInputError as e:
        logger.error(f"❌ 输入错误: {e}")
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"❌ 文件读写失败: {e}")
        return EXIT_IO


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
