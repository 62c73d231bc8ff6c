"""投影计数器"""
from dataclasses import dataclass


@dataclass
class ProjectionCounter:
    """一次求解运行内的计数器，由求解器持有并显式传给各算子

    projections 只统计对某个 P_{C_i} 的调用；对角集上的平均、
    诊断用的 Error 计算都不计入。
    """
    projections: int = 0
    iterations: int = 0

    def add_projections(self, count: int) -> None:
        self.projections += count

    def tick(self) -> None:
        self.iterations += 1
