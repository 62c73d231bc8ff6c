"""命令行测试：子命令、退出码与输出文件"""
import json
import sys

import pandas as pd
import pytest
from loguru import logger

from src.bench import BenchRecord, export_records
from src.cli import main


@pytest.fixture(autouse=True)
def restore_logger():
    """main() 会重新配置 loguru，测试结束后恢复安静模式"""
    yield
    logger.remove()
    logger.add(sys.stderr, level="WARNING")


def _last_json(capsys) -> dict:
    """stdout 中最后一个 JSON 摘要"""
    out = capsys.readouterr().out
    start = out.rfind("\n{\n") + 1
    return json.loads(out[start:])


def ratio_example_records():
    """两个问题、两个求解器，耗时 [[1, 2], [2, 1]]"""
    times = {("a", 10): 1.0, ("b", 10): 2.0, ("a", 20): 2.0, ("b", 20): 1.0}
    return [
        BenchRecord(
            family="linear", m=m, n=10, solver=solver, rep=0, seed=0,
            wall_time_s=t, iterations=10, projections=100,
            final_error=0.0, termination="converged",
        )
        for (solver, m), t in times.items()
    ]


@pytest.fixture
def problem_file(tmp_path):
    path = tmp_path / "p.json"
    assert main(["gen", "--family", "quadratic", "--n", "10", "--m", "6", "--seed", "7", "--out", str(path)]) == 0
    return path


# ==================== gen ====================

def test_gen_writes_problem(tmp_path, capsys):
    path = tmp_path / "p.json"
    code = main(["gen", "--family", "quadratic", "--n", "10", "--m", "5", "--seed", "7", "--out", str(path)])
    assert code == 0
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["n"] == 10 and data["m"] == 5
    assert [s["kind"] for s in data["sets"]] == ["ball"] * 5
    summary = _last_json(capsys)
    assert summary["seed"] == 7
    assert summary["interior_slack_min"] > 0.0


def test_gen_missing_out_is_usage_error():
    assert main(["gen", "--family", "linear", "--m", "5"]) == 2


def test_gen_unknown_flag_is_usage_error(tmp_path):
    assert main(["gen", "--family", "linear", "--m", "5", "--out", str(tmp_path / "p.json"), "--colour"]) == 2


def test_gen_is_deterministic(tmp_path):
    args = ["gen", "--family", "linear", "--n", "4", "--m", "9", "--seed", "3", "--out"]
    assert main(args + [str(tmp_path / "a.json")]) == 0
    assert main(args + [str(tmp_path / "b.json")]) == 0
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_gen_rejects_bad_sizes(tmp_path):
    assert main(["gen", "--family", "linear", "--m", "0", "--out", str(tmp_path / "p.json")]) == 2


# ==================== solve ====================

def test_solve_converges(problem_file, tmp_path, capsys):
    trace = tmp_path / "trace.csv"
    code = main(["solve", "--problem", str(problem_file), "--r", "3", "--x0-seed", "1", "--trace", str(trace)])
    assert code == 0
    summary = _last_json(capsys)
    assert summary["termination"] == "converged"
    assert summary["final_error"] <= 1e-6 * 6
    assert summary["seeds"] == {"problem": 7, "x0": 1, "rng": 0}
    frame = pd.read_csv(trace)
    assert list(frame.columns) == ["iteration", "projections", "error", "elapsed_s"]
    assert frame["iteration"].iloc[-1] == summary["iterations"]


def test_solve_short_cycle_divisibility_is_usage_error(problem_file):
    code = main(["solve", "--problem", str(problem_file), "--method", "short-cycle", "--r", "5"])
    assert code == 2


def test_solve_block_larger_than_m_is_usage_error(problem_file):
    assert main(["solve", "--problem", str(problem_file), "--r", "7"]) == 2


def test_solve_max_iterations_exit_code(problem_file):
    assert main(["solve", "--problem", str(problem_file), "--max-iters", "1"]) == 3


def test_solve_missing_file_is_io_error(tmp_path):
    assert main(["solve", "--problem", str(tmp_path / "absent.json")]) == 1


def test_solve_truncated_file_is_usage_error(problem_file):
    text = problem_file.read_text(encoding="utf-8")
    problem_file.write_text(text[:40], encoding="utf-8")
    assert main(["solve", "--problem", str(problem_file)]) == 2


def test_solve_non_utf8_file_is_usage_error(tmp_path):
    path = tmp_path / "p.json"
    path.write_bytes(b"\xff\xfe")
    assert main(["solve", "--problem", str(path)]) == 2


def test_solve_negative_x0_seed_is_usage_error(problem_file):
    assert main(["solve", "--problem", str(problem_file), "--x0-seed", "-1"]) == 2


def test_operator_log_follows_consecutive_pairs(problem_file, tmp_path):
    ops = tmp_path / "ops.csv"
    main(["solve", "--problem", str(problem_file), "--r", "2", "--max-iters", "8", "--operator-log", str(ops)])
    frame = pd.read_csv(ops)
    expected = ["T(0,1)", "T(1,2)", "T(2,3)", "T(3,4)", "T(4,5)", "T(5,0)", "T(0,1)", "T(1,2)"]
    assert frame["operator"].tolist() == expected[: len(frame)]
    assert frame["iteration"].tolist() == list(range(1, len(frame) + 1))


# ==================== bench ====================

def _tiny_plan(tmp_path):
    path = tmp_path / "plan.json"
    path.write_text(json.dumps({
        "families": ["linear"],
        "sizes": [8],
        "n": 5,
        "repetitions": 2,
        "base_seed": 11,
        "solvers": [{"method": "cyclic", "r": 2}, {"method": "cyclic", "r": 4}],
    }), encoding="utf-8")
    return path


def test_bench_parallel_matches_serial(tmp_path, capsys):
    plan = _tiny_plan(tmp_path)
    assert main(["bench", "--plan", str(plan), "--out", str(tmp_path / "serial.csv")]) == 0
    summary = _last_json(capsys)
    assert summary == {"records": 4, "converged": 4, "base_seed": 11, "out": str(tmp_path / "serial.csv")}
    assert main(["bench", "--plan", str(plan), "--out", str(tmp_path / "par.csv"), "--parallel", "2"]) == 0

    serial = pd.read_csv(tmp_path / "serial.csv").drop(columns="wall_time_s")
    parallel = pd.read_csv(tmp_path / "par.csv").drop(columns="wall_time_s")
    pd.testing.assert_frame_equal(serial, parallel)


def test_bench_plan_error_is_usage_error(tmp_path):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"sizes": [8], "solvers": [{"method": "spiral"}]}), encoding="utf-8")
    assert main(["bench", "--plan", str(plan), "--out", str(tmp_path / "r.csv")]) == 2


# ==================== profile ====================

def test_profile_ratio_example(tmp_path, capsys):
    records = tmp_path / "records.csv"
    export_records(ratio_example_records(), records)
    out = tmp_path / "profile.csv"
    assert main(["profile", "--records", str(records), "--out", str(out)]) == 0
    summary = _last_json(capsys)
    assert summary["pi_at_1"] == {"a": 0.5, "b": 0.5}
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["tau", "a", "b"]
    assert frame["a"].iloc[-1] == 1.0


def test_profile_single_solver_is_all_ones(tmp_path):
    records = tmp_path / "records.csv"
    export_records([r for r in ratio_example_records() if r.solver == "a"], records)
    out = tmp_path / "profile.csv"
    assert main(["profile", "--records", str(records), "--out", str(out)]) == 0
    assert (pd.read_csv(out)["a"] == 1.0).all()


def test_profile_projection_metric(tmp_path, capsys):
    records = tmp_path / "records.csv"
    export_records(ratio_example_records(), records)
    assert main(["profile", "--records", str(records), "--metric", "projections", "--out", str(tmp_path / "p.csv")]) == 0
    assert _last_json(capsys)["pi_at_1"] == {"a": 1.0, "b": 1.0}


def test_profile_incomplete_grid_is_usage_error(tmp_path):
    records = tmp_path / "records.csv"
    export_records(ratio_example_records()[:3], records)
    assert main(["profile", "--records", str(records), "--out", str(tmp_path / "p.csv")]) == 2


def test_profile_empty_records_is_usage_error(tmp_path):
    records = tmp_path / "records.csv"
    records.write_bytes(b"")
    assert main(["profile", "--records", str(records), "--out", str(tmp_path / "p.csv")]) == 2
    assert not (tmp_path / "p.csv").exists()


@pytest.mark.parametrize("points", ["0", "1"])
def test_profile_tau_points_below_two_is_usage_error(tmp_path, points):
    records = tmp_path / "records.csv"
    export_records(ratio_example_records(), records)
    code = main(["profile", "--records", str(records), "--tau-points", points, "--out", str(tmp_path / "p.csv")])
    assert code == 2


# ==================== 帮助信息 ====================

@pytest.mark.parametrize(
    "command, fragment",
    [("solve", "1e-12"), ("gen", "1000"), ("bench", "10")],
)
def test_help_lists_defaults(capsys, command, fragment):
    assert main([command, "--help"]) == 0
    assert fragment in capsys.readouterr().out


def test_version_flag(capsys):
    assert main(["--version"]) == 0
    assert "drcfp 0.1.0" in capsys.readouterr().out


def test_profile_family_filter(tmp_path, capsys):
    quadratic = [
        BenchRecord(
            family="quadratic", m=10, n=10, solver=solver, rep=0, seed=0,
            wall_time_s=t, iterations=10, projections=100,
            final_error=0.0, termination="converged",
        )
        for solver, t in (("a", 5.0), ("b", 1.0))
    ]
    records = tmp_path / "records.csv"
    export_records(ratio_example_records() + quadratic, records)
    out = tmp_path / "p.csv"
    assert main(["profile", "--records", str(records), "--family", "quadratic", "--out", str(out)]) == 0
    summary = _last_json(capsys)
    assert summary["problems"] == 1
    assert summary["pi_at_1"] == {"a": 0.0, "b": 1.0}
