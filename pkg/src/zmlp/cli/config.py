"""
命令行运行配置
"""
from __future__ import annotations

import os
from argparse import Namespace
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from zmlp.errors import ZmlpError

JOBS_ENV = "ZMLP_JOBS"
FORMATS = ("text", "json", "dot")


@dataclass
class RunConfig:
    """
    一次命令行调用的配置

    - command: 子命令名
    - input_path / output_path: 输入 JSON 与输出文件（DOT 或图片）
    - depth / nodes / max_size: 搜索与构图的界，必须为正
    - include_products / scan: 模式参数
    - output_format: text、json、dot 三者之一
    - jobs: 并行进程数，环境变量 ZMLP_JOBS 优先
    - options: 子命令特有的其余参数
    """
    command: str
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    depth: int = 10
    nodes: int = 5000
    max_size: int = 3
    include_products: bool = False
    scan: int = 50
    output_format: str = "text"
    jobs: int = 1
    options: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("depth", "nodes", "scan", "jobs"):
            value = getattr(self, name)
            if value < 1:
                raise ZmlpError(f"{name} 必须为正: {value}")
        if self.max_size < 0:
            raise ZmlpError(f"max_size 必须非负: {self.max_size}")
        if self.output_format not in FORMATS:
            raise ZmlpError(f"未知的输出格式: {self.output_format}")

    @classmethod
    def from_args(cls, args: Namespace) -> "RunConfig":
        """
        由 argparse 的结果构造配置

        --json 与 --dot 不能同时给出；ZMLP_JOBS 覆盖 --jobs
        """
        as_json = bool(getattr(args, "json", False))
        dot_path = getattr(args, "dot", None)
        if as_json and dot_path:
            raise ZmlpError("--json 与 --dot 只能选一个")
        output_format = "json" if as_json else ("dot" if dot_path else "text")

        jobs = getattr(args, "jobs", 1) or 1
        env_jobs = os.environ.get(JOBS_ENV)
        if env_jobs:
            try:
                jobs = int(env_jobs)
            except ValueError:
                raise ZmlpError(f"{JOBS_ENV} 不是整数: {env_jobs!r}")

        known = {"command", "poly", "dot", "plot_path", "json", "jobs", "depth", "nodes",
                 "max_size", "include_products", "scan", "verbose", "handler"}
        options = {k: v for k, v in vars(args).items() if k not in known}
        return cls(
            command=args.command,
            input_path=getattr(args, "poly", None),
            output_path=dot_path or getattr(args, "plot_path", None),
            depth=getattr(args, "depth", 10),
            nodes=getattr(args, "nodes", 5000),
            max_size=getattr(args, "max_size", 3),
            include_products=bool(getattr(args, "include_products", False)),
            scan=getattr(args, "scan", 50),
            output_format=output_format,
            jobs=jobs,
            options=options,
        )
