"""日志配置"""
import sys
from pathlib import Path
from typing import Optional, Union

from loguru import logger

from src.config.settings import settings

LOG_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
    "<level>{level: <8}</level> | <level>{message}</level>"
)


def setup_logger(
    level: Optional[str] = None,
    log_file: Optional[Union[str, Path]] = None,
) -> None:
    """配置 loguru 日志输出

    Args:
        level: 日志级别，默认读取 settings.LOG_LEVEL
        log_file: 可选的日志文件路径，按天轮转，保留 7 天
    """
    level = (level or settings.LOG_LEVEL).upper()
    log_file = log_file or settings.LOG_FILE

    logger.remove()
    logger.add(sys.stderr, format=LOG_FORMAT, level=level)
    if log_file:
        logger.add(
            str(log_file),
            rotation="1 day",
            retention="7 days",
            level="DEBUG",
        )
