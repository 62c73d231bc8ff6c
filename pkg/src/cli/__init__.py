"""命令行模块"""

from src.cli.main import build_parser, main

__all__ = ["build_parser", "main"]
