"""基准测试计划"""
import json
from pathlib import Path
from typing import Iterator, List, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.config.settings import settings
from src.errors import ProblemParseError
from src.problems.model import ProblemFamily
from src.solver.config import SolverConfig

Cell = Tuple[ProblemFamily, int, int]  # (问题族, m, 重复序号)


class BenchPlan(BaseModel):
    """一组随机实验

    Attributes:
        families: 问题族列表
        sizes: 集合个数 m 的列表
        n: 空间维度
        solvers: 参与比较的求解器配置
        repetitions: 每个 (族, m) 单元的独立重复次数
        base_seed: 派生全部种子的基础种子
    """

    model_config = ConfigDict(extra="forbid")

    families: List[ProblemFamily] = Field(
        default_factory=lambda: [ProblemFamily.LINEAR, ProblemFamily.QUADRATIC], min_length=1
    )
    sizes: List[int] = Field(min_length=1)
    n: int = Field(default_factory=lambda: settings.DEFAULT_DIMENSION, ge=1)
    solvers: List[SolverConfig] = Field(min_length=1)
    repetitions: int = Field(default_factory=lambda: settings.BENCH_REPETITIONS, ge=1)
    base_seed: int = Field(default=0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _check(self):
        if any(m < 1 for m in self.sizes):
            raise ValueError("sizes 中的 m 必须 ≥ 1")
        if ProblemFamily.CUSTOM in self.families:
            raise ValueError("基准计划只支持 linear / quadratic 问题族")
        labels = [s.label for s in self.solvers]
        duplicated = sorted({x for x in labels if labels.count(x) > 1})
        if duplicated:
            raise ValueError(f"求解器标识重复: {duplicated}，请为它们设置 name")
        return self

    def cells(self) -> Iterator[Cell]:
        """按 (族, m, 重复) 的固定顺序枚举单元"""
        for family in self.families:
            for m in self.sizes:
                for rep in range(self.repetitions):
                    yield family, m, rep

    @property
    def solver_labels(self) -> List[str]:
        return [s.label for s in self.solvers]


def load_plan(path: Union[str, Path]) -> BenchPlan:
    """读取 JSON 计划文件，错误信息中给出字段路径"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ProblemParseError(f"计划文件不是 UTF-8 文本: {path}", field=f"byte {e.start}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemParseError(f"计划文件不是合法 JSON: {e.msg}", field=f"line {e.lineno}") from e
    try:
        return BenchPlan.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(p) for p in first["loc"])
        raise ProblemParseError(f"计划文件字段错误: {first['msg']}", field=field) from e
