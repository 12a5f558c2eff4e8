"""
命令行前端
"""
from zmlp.cli.config import RunConfig
from zmlp.cli.main import main

__all__ = ['RunConfig', 'main']
