"""问题模块：随机问题生成与问题文件读写"""

from src.problems.model import (
    GENERATOR_ID,
    FeasibilityProblem,
    GeneratorParams,
    ProblemFamily,
)
from src.problems.generators import (
    generate_linear,
    generate_problem,
    generate_quadratic,
    generate_x0,
)
from src.problems.serialization import (
    load_problem,
    problem_from_dict,
    problem_to_dict,
    problem_to_json,
    save_problem,
)

__all__ = [
    "GENERATOR_ID",
    "FeasibilityProblem",
    "GeneratorParams",
    "ProblemFamily",
    "generate_linear",
    "generate_problem",
    "generate_quadratic",
    "generate_x0",
    "load_problem",
    "problem_from_dict",
    "problem_to_dict",
    "problem_to_json",
    "save_problem",
]
