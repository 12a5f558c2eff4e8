import logging
import os
from typing import Dict, Tuple

import pandas as pd

from zmlp.classify.enumeration import count_comb

logger = logging.getLogger(__name__)


class CombCache:
    """
    |ZMLP_comb(a,b)| 的本地缓存（单例模式）
    存储结构：cache_dir/{a}/counts.parquet，列为 a, b, count
    缓存目录默认 local_data，可用环境变量 ZMLP_CACHE_DIR 覆盖
    """
    _instance = None

    def __new__(cls, *args, **kwargs):
        """实现单例模式"""
        if cls._instance is None:
            cls._instance = super(CombCache, cls).__new__(cls)
        return cls._instance

    def __init__(self, cache_dir: str = None):
        # 确保初始化逻辑只运行一次
        if not hasattr(self, '_initialized'):
            self.cache_dir = cache_dir or os.environ.get("ZMLP_CACHE_DIR", "local_data")
            self._memory: Dict[Tuple[int, int], int] = {}
            self._loaded = set()
            self._initialized = True

    def _get_path(self, a: int) -> str:
        """获取存储路径，目录不存在则创建"""
        path = os.path.join(self.cache_dir, str(a))
        os.makedirs(path, exist_ok=True)
        return os.path.join(path, "counts.parquet")

    def _load(self, a: int) -> None:
        if a in self._loaded:
            return
        self._loaded.add(a)
        path = self._get_path(a)
        if not os.path.exists(path):
            return
        df = pd.read_parquet(path)
        for row in df.itertuples(index=False):
            self._memory[(int(row.a), int(row.b))] = int(row.count)
        logger.debug("从 %s 读取 %d 条计数", path, len(df))

    def _save(self, a: int) -> None:
        rows = sorted((aa, bb, c) for (aa, bb), c in self._memory.items() if aa == a)
        df = pd.DataFrame(rows, columns=["a", "b", "count"])
        df.to_parquet(self._get_path(a), index=False)

    def get_count(self, a: int, b: int) -> int:
        """
        |ZMLP_comb(a,b)|，先查缓存，缺失时计算并写回
        """
        self._load(a)
        key = (a, b)
        if key not in self._memory:
            self._memory[key] = count_comb(a, b)
            self._save(a)
        return self._memory[key]

    def get_counts(self, a: int, bs) -> pd.Series:
        """一批 b 的计数，索引为 b"""
        self._load(a)
        missing = [b for b in bs if (a, b) not in self._memory]
        for b in missing:
            self._memory[(a, b)] = count_comb(a, b)
        if missing:
            self._save(a)
        return pd.Series({b: self._memory[(a, b)] for b in bs}, name="count", dtype="int64")

    def clear(self) -> None:
        """只清空内存中的缓存，不删除文件"""
        self._memory.clear()
        self._loaded.clear()
