"""测试公共夹具"""
import numpy as np
import pytest
from loguru import logger

from src.geometry import Ball, HalfspaceSlab, Hyperplane
from src.problems import FeasibilityProblem, GeneratorParams, generate_linear, generate_quadratic


@pytest.fixture(autouse=True, scope="session")
def quiet_logger():
    """测试期间只输出 WARNING 以上的日志"""
    import sys

    logger.remove()
    logger.add(sys.stderr, level="WARNING")
    yield


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def _random_set(rng: np.random.Generator, n: int):
    """随机抽取一个球、带状区域或超平面"""
    kind = rng.integers(3)
    if kind == 0:
        return Ball(rng.uniform(-3, 3, n), rng.uniform(0.5, 4.0))
    if kind == 1:
        return HalfspaceSlab(rng.uniform(-1, 1, n), rng.uniform(0.0, 1.0))
    return Hyperplane(rng.uniform(-1, 1, n), rng.uniform(-2, 2))


def _sample_in_set(rng: np.random.Generator, convex_set, n: int):
    """集合中的一个点：随机点的投影"""
    return convex_set.project(rng.uniform(-6, 6, n))


@pytest.fixture
def axes_problem():
    """R² 中的 x 轴与 y 轴，交点为原点"""
    x_axis = Hyperplane([0.0, 1.0], 0.0)
    y_axis = Hyperplane([1.0, 0.0], 0.0)
    return FeasibilityProblem(dimension=2, sets=(x_axis, y_axis))


@pytest.fixture
def small_quadratic():
    return generate_quadratic(GeneratorParams(n=10, m=20, seed=0))


@pytest.fixture
def small_linear():
    return generate_linear(GeneratorParams(n=10, m=20, seed=0))


@pytest.fixture
def random_set():
    return _random_set


@pytest.fixture
def sample_in_set():
    return _sample_in_set
