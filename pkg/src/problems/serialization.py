"""问题文件读写

文件为 JSON，浮点数以最短可回读的十进制写出，读回逐位一致。结构：
    {version, family, seed, n, m, generator, params, sets: [{kind, ...}]}
详见 docs/problem_file_schema.md。
"""
import json
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.errors import InvalidInputError, ProblemParseError, ProblemValidationError
from src.geometry import set_from_dict
from src.problems.model import GENERATOR_ID, FeasibilityProblem, ProblemFamily

SCHEMA_VERSION = 1


class _StrictRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")


class BallRecord(_StrictRecord):
    kind: Literal["ball"]
    center: List[float]
    radius: float


class SlabRecord(_StrictRecord):
    kind: Literal["slab"]
    normal: List[float]
    halfwidth: float


class HyperplaneRecord(_StrictRecord):
    kind: Literal["hyperplane"]
    normal: List[float]
    offset: float


SetRecord = Annotated[Union[BallRecord, SlabRecord, HyperplaneRecord], Field(discriminator="kind")]


class ProblemFile(_StrictRecord):
    """问题文件 schema"""
    version: Literal[1]
    family: ProblemFamily
    seed: Optional[int] = None
    n: int = Field(ge=1)
    m: int = Field(ge=1)
    generator: Optional[str] = None
    params: Dict[str, Any] = Field(default_factory=dict)
    sets: List[SetRecord]


def problem_to_dict(problem: FeasibilityProblem) -> Dict[str, Any]:
    return {
        "version": SCHEMA_VERSION,
        "family": problem.family.value,
        "seed": problem.seed,
        "n": problem.dimension,
        "m": problem.m,
        "generator": GENERATOR_ID if problem.seed is not None else None,
        "params": problem.params,
        "sets": [s.to_dict() for s in problem.sets],
    }


def problem_to_json(problem: FeasibilityProblem) -> str:
    return json.dumps(problem_to_dict(problem), ensure_ascii=False)


def problem_from_dict(data: Any) -> FeasibilityProblem:
    """校验并还原问题

    Raises:
        ProblemParseError: 结构或字段类型错误，消息中给出字段路径
        ProblemValidationError: 维度或个数不一致
    """
    try:
        parsed = ProblemFile.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(p) for p in first["loc"])
        raise ProblemParseError(f"问题文件字段错误: {first['msg']}", field=field) from e

    if len(parsed.sets) != parsed.m:
        raise ProblemValidationError(f"m={parsed.m} 与集合条目数 {len(parsed.sets)} 不一致")

    sets = []
    for i, record in enumerate(parsed.sets):
        values = record.model_dump()
        dim = len(values["center"] if record.kind == "ball" else values["normal"])
        if dim != parsed.n:
            raise ProblemValidationError(f"集合 sets.{i} 维度为 {dim}，与 n={parsed.n} 不一致")
        try:
            sets.append(set_from_dict(values))
        except InvalidInputError as e:
            raise ProblemValidationError(f"集合 sets.{i} 非法: {e}") from e

    return FeasibilityProblem(
        dimension=parsed.n,
        sets=tuple(sets),
        family=parsed.family,
        seed=parsed.seed,
        params=parsed.params,
    )


def save_problem(problem: FeasibilityProblem, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(problem_to_json(problem), encoding="utf-8")
    logger.info(f"💾 问题已保存: {path} (family={problem.family.value}, n={problem.dimension}, m={problem.m})")
    return path


def load_problem(path: Union[str, Path]) -> FeasibilityProblem:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ProblemParseError(f"问题文件不是 UTF-8 文本: {path}", field=f"byte {e.start}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemParseError(
            f"问题文件不是合法 JSON（可能被截断）: {e.msg}", field=f"line {e.lineno} column {e.colno}"
        ) from e
    problem = problem_from_dict(data)
    logger.info(f"📂 已加载问题: {path} (family={problem.family.value}, n={problem.dimension}, m={problem.m})")
    return problem
