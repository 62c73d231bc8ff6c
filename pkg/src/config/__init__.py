"""配置模块"""
from src.config.settings import settings
from src.config.logger import setup_logger

__all__ = ["settings", "setup_logger"]
