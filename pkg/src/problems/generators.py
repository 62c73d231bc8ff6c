"""随机问题生成器

- 线性族：m 个带状区域 −b_i ≤ ⟨a^i, x⟩ ≤ b_i，a^i 坐标取自 U[−1, 1] 后单位化，b_i ~ U[0, 0.1]
- 二次族：m 个球，球心坐标 ~ U[−5, 5]，半径 ‖a^i‖ + α_i，α_i ~ U[0, 0.1]
- 初始点：坐标 ~ U[−10, 10]

两族都让原点严格位于每个集合内部。b_i 或 α_i 恰好抽到 0 的情形概率为零，
出现时重抽，保证交集内部非空。
"""
import numpy as np
from loguru import logger

from src.errors import InvalidInputError
from src.geometry import Ball, HalfspaceSlab, Vector
from src.problems.model import FeasibilityProblem, GeneratorParams, ProblemFamily

# 同一种子下问题与初始点使用不同的子流
PROBLEM_STREAM = 0
X0_STREAM = 1


def make_rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(stream,)))


def _positive_uniform(rng: np.random.Generator, bounds, size: int) -> np.ndarray:
    """U[low, high) 抽样，把恰好为 0 的值重抽"""
    values = rng.uniform(bounds[0], bounds[1], size)
    zero = values <= 0.0
    while np.any(zero):
        values[zero] = rng.uniform(bounds[0], bounds[1], int(zero.sum()))
        zero = values <= 0.0
    return values


def _params_meta(params: GeneratorParams) -> dict:
    return params.model_dump(mode="json")


def generate_linear(params: GeneratorParams) -> FeasibilityProblem:
    """生成线性（带状）可行性问题"""
    rng = make_rng(params.seed, PROBLEM_STREAM)
    normals = rng.uniform(params.normal_range[0], params.normal_range[1], (params.m, params.n))
    norms = np.linalg.norm(normals, axis=1)
    degenerate = norms == 0.0
    while np.any(degenerate):
        normals[degenerate] = rng.uniform(
            params.normal_range[0], params.normal_range[1], (int(degenerate.sum()), params.n)
        )
        norms = np.linalg.norm(normals, axis=1)
        degenerate = norms == 0.0
    normals = normals / norms[:, None]
    halfwidths = _positive_uniform(rng, params.halfwidth_range, params.m)

    sets = [HalfspaceSlab(a, b) for a, b in zip(normals, halfwidths)]
    logger.debug(f"生成线性问题: n={params.n}, m={params.m}, seed={params.seed}")
    return FeasibilityProblem(
        dimension=params.n,
        sets=tuple(sets),
        family=ProblemFamily.LINEAR,
        seed=params.seed,
        params=_params_meta(params),
    )


def generate_quadratic(params: GeneratorParams) -> FeasibilityProblem:
    """生成二次（球）可行性问题"""
    rng = make_rng(params.seed, PROBLEM_STREAM)
    centers = rng.uniform(params.center_range[0], params.center_range[1], (params.m, params.n))
    slack = _positive_uniform(rng, params.slack_range, params.m)
    radii = np.linalg.norm(centers, axis=1) + slack

    sets = [Ball(c, rho) for c, rho in zip(centers, radii)]
    logger.debug(f"生成二次问题: n={params.n}, m={params.m}, seed={params.seed}")
    return FeasibilityProblem(
        dimension=params.n,
        sets=tuple(sets),
        family=ProblemFamily.QUADRATIC,
        seed=params.seed,
        params=_params_meta(params),
    )


def generate_problem(family: ProblemFamily, params: GeneratorParams) -> FeasibilityProblem:
    family = ProblemFamily(family)
    if family is ProblemFamily.LINEAR:
        return generate_linear(params)
    if family is ProblemFamily.QUADRATIC:
        return generate_quadratic(params)
    raise InvalidInputError(f"无法随机生成问题族: {family.value}")


def generate_x0(params: GeneratorParams) -> Vector:
    """初始点，坐标 ~ U[x0_range]"""
    rng = make_rng(params.seed, X0_STREAM)
    return rng.uniform(params.x0_range[0], params.x0_range[1], params.n)
