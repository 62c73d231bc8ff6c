"""配置管理模块"""
from pathlib import Path
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """应用配置

    所有字段均可通过同名环境变量或 .env 文件覆盖，
    显式传入的参数（CLI 参数、SolverConfig 字段等）优先于这里的默认值。
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    # 项目基础配置
    APP_NAME: str = "循环DR可行性求解器"
    APP_VERSION: str = "0.1.0"

    # 求解器配置
    SOLVER_EPSILON: float = Field(default=1e-12, gt=0)  # 相对变化停止阈值
    SOLVER_MAX_ITERATIONS: int = Field(default=1_000_000, ge=1)
    SOLVER_TRACE_EVERY: int = Field(default=1, ge=1)  # 每隔多少次迭代记录一次 Error

    # 几何容差
    PROJECTION_TOLERANCE: float = 1e-10  # 成员判定绝对容差
    NORMAL_TOLERANCE: float = 1e-12  # 单位法向量容差

    # 随机问题生成
    DEFAULT_DIMENSION: int = Field(default=1000, ge=1)

    # 基准测试配置
    BENCH_REPETITIONS: int = Field(default=10, ge=1)
    BENCH_WORKERS: int = Field(default=1, ge=1)
    PROFILE_TAU_POINTS: int = Field(default=200, ge=2)

    # 日志配置
    LOG_LEVEL: str = "INFO"
    LOG_FILE: Optional[Path] = None


# 全局配置实例
settings = Settings()
