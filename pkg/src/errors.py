"""异常定义

所有输入类错误都继承自 ValueError，调用方可以统一捕获；
CSV 导出失败继承自 OSError 并携带文件路径。
"""
from typing import Iterable, Tuple


class InvalidInputError(ValueError):
    """非法输入：维度不匹配、参数越界、方法配置与问题不兼容等"""


class ProblemParseError(InvalidInputError):
    """问题文件或基准计划文件格式错误"""

    def __init__(self, message: str, field: str = ""):
        self.field = field
        super().__init__(f"{message} (字段: {field})" if field else message)


class ProblemValidationError(InvalidInputError):
    """问题内容不一致，例如集合维度与问题维度不同"""


class MissingCellsError(InvalidInputError):
    """聚合时缺少 (问题, 求解器) 单元"""

    def __init__(self, cells: Iterable[Tuple[object, str]]):
        self.cells = list(cells)
        listing = ", ".join(f"({p}, {s})" for p, s in self.cells)
        super().__init__(f"记录不完整，缺少 {len(self.cells)} 个单元: {listing}")


class ExportError(OSError):
    """CSV 读写失败"""

    def __init__(self, path, cause: Exception):
        self.path = str(path)
        super().__init__(f"CSV 读写失败: {self.path}: {cause}")
