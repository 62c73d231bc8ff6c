"""循环块下标序列 C_{m,r}(d)

第 d 个块由 r 个下标组成：
    ((r−1)d − (r−1)) mod m, ((r−1)d − (r−2)) mod m, …, ((r−1)d) mod m
相邻两个块恰好共享一个下标（前一块的最后一个 = 后一块的第一个），
r = 2 时就是逐对循环的经典顺序。
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

from src.errors import InvalidInputError

Block = Tuple[int, ...]


def block_indices(m: int, r: int, d: int) -> Block:
    """返回第 d 个块的 r 个集合下标

    Args:
        m: 集合个数，≥ 1
        r: 块大小，≥ 2
        d: 块序号，≥ 1

    Returns:
        r 元组，取值范围 [0, m−1]
    """
    if m < 1:
        raise InvalidInputError(f"集合个数 m 必须 ≥ 1，实际 {m}")
    if r < 2:
        raise InvalidInputError(f"块大小 r 必须 ≥ 2，实际 {r}")
    if d < 1:
        raise InvalidInputError(f"块序号 d 必须 ≥ 1，实际 {d}")
    start = (r - 1) * d - (r - 1)
    # Python 的 % 对负数也返回 [0, m−1] 内的值
    return tuple((start + j) % m for j in range(r))


@dataclass(frozen=True)
class BlockSchedule:
    """按需生成块的循环调度，周期为 m"""

    m: int
    r: int

    def __post_init__(self):
        if self.m < 1:
            raise InvalidInputError(f"集合个数 m 必须 ≥ 1，实际 {self.m}")
        if self.r < 2:
            raise InvalidInputError(f"块大小 r 必须 ≥ 2，实际 {self.r}")

    def block(self, d: int) -> Block:
        if d < 1:
            raise InvalidInputError(f"块序号 d 必须 ≥ 1，实际 {d}")
        return self.period_blocks[(d - 1) % self.m]

    @cached_property
    def period_blocks(self) -> Tuple[Block, ...]:
        """一个周期内的 m 个不同块（d = 1..m）"""
        return tuple(block_indices(self.m, self.r, d) for d in range(1, self.m + 1))
