"""调度模块：循环块下标与扫描算子"""

from src.schedule.blocks import Block, BlockSchedule, block_indices
from src.schedule.sweeps import (
    BlockSweep,
    SecondOperator,
    SweepKind,
    SweepPlan,
    build_block_operators,
    build_Q,
    build_Q_tilde,
    random_product_step,
)

__all__ = [
    "Block",
    "BlockSchedule",
    "block_indices",
    "BlockSweep",
    "SecondOperator",
    "SweepKind",
    "SweepPlan",
    "build_block_operators",
    "build_Q",
    "build_Q_tilde",
    "random_product_step",
]
