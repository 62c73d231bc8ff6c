"""停止准则

相对变化 ‖x^{k+j} − x^{k+j−1}‖ / max(‖x^{k+j−1}‖, 1) ≤ ε 对连续 stall_window 步成立时停止。
分母取 max(·, 1) 使准则在原点附近也有定义。
"""
from typing import Sequence, Union

import numpy as np
from numpy.typing import NDArray

from src.errors import InvalidInputError


def relative_change(previous: NDArray, current: NDArray) -> float:
    """相对变化；对乘积空间状态按 H^m 中的范数计算"""
    denominator = max(float(np.linalg.norm(previous)), 1.0)
    return float(np.linalg.norm(current - previous)) / denominator


def check_termination(
    history: Union[Sequence[NDArray], NDArray],
    stall_window: int,
    epsilon: float,
) -> bool:
    """检查最近 stall_window 步是否都满足相对变化 ≤ epsilon

    Args:
        history: 按时间顺序的迭代点，至少 stall_window + 1 个
        stall_window: 窗口长度
        epsilon: 阈值（边界值视为满足）
    """
    if stall_window < 1:
        raise InvalidInputError(f"stall_window 必须 ≥ 1，实际 {stall_window}")
    if len(history) < stall_window + 1:
        raise InvalidInputError(
            f"历史迭代点不足: 需要 {stall_window + 1} 个，实际 {len(history)}"
        )
    recent = [np.asarray(h, dtype=np.float64) for h in history[-(stall_window + 1):]]
    return all(
        relative_change(prev, cur) <= epsilon
        for prev, cur in zip(recent[:-1], recent[1:])
    )


class StallMonitor:
    """check_termination 的增量形式，只保存连续满足次数"""

    def __init__(self, stall_window: int, epsilon: float):
        if stall_window < 1:
            raise InvalidInputError(f"stall_window 必须 ≥ 1，实际 {stall_window}")
        self.stall_window = stall_window
        self.epsilon = epsilon
        self.consecutive = 0
        self.checks = 0

    def update(self, previous: NDArray, current: NDArray) -> bool:
        self.checks += 1
        if relative_change(previous, current) <= self.epsilon:
            self.consecutive += 1
        else:
            self.consecutive = 0
        return self.consecutive >= self.stall_window
