"""
大直角三角形上 ZMLP 个数的稳定值

左表: 固定 a，b 在与 a 互素的剩余类中增大，计数最终只依赖 b mod a
右表: 固定 k，三角形 △(a, a+k)，a 增大
"""
import json
import logging
from functools import lru_cache
from importlib import resources
from math import gcd
from typing import Any, Dict, List

import pandas as pd

from zmlp.classify.enumeration import count_comb
from zmlp.errors import ZmlpError

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def load_table2() -> dict:
    text = resources.files("zmlp").joinpath("data/table2.json").read_text(encoding="utf-8")
    return json.loads(text)


def golden_left(a: int, residue: int):
    entry = load_table2()["left"].get(str(a))
    if isinstance(entry, dict):
        return entry.get(str(residue))
    return entry


def golden_right(k: int):
    return load_table2()["right"].get(str(k))


class Table2Model:
    """
    大三角形计数表的计算模型

    核心功能：
    1. 左表：按剩余类扫描 b，取稳定后的计数
    2. 右表：按 a 扫描 △(a, a+k)，取稳定后的计数
    3. 与随包发布的结果比较
    """

    def __init__(
        self,
        a_max: int = 7,
        k_max: int = 4,
        scan: int = 50,
        right_a_max: int = 60,
        use_cache: bool = False,
    ):
        """
        初始化模型

        参数:
        - a_max: 左表中 a 的最大值，默认 7
        - k_max: 右表中 k 的最大值，默认 4
        - scan: 左表中 b 扫描到 a + scan，默认 50
        - right_a_max: 右表中 a 扫描的上界，默认 60
        - use_cache: 是否使用 CombCache 的本地 parquet 缓存
        """
        if a_max < 1 or k_max < 0 or scan < 1:
            raise ZmlpError(f"参数必须为正: a_max={a_max}, k_max={k_max}, scan={scan}")
        self.a_max = a_max
        self.k_max = k_max
        self.scan = scan
        self.right_a_max = right_a_max
        self.use_cache = use_cache

    def _count(self, a: int, b: int) -> int:
        if self.use_cache:
            # zmlp.utils 依赖 classify.enumeration，这里延迟导入
            from zmlp.utils.comb_cache import CombCache

            return CombCache().get_count(a, b)
        return count_comb(a, b)

    @staticmethod
    def _stable(values: List[int]) -> bool:
        return len(values) >= 2 and values[-1] == values[-2]

    def left_table(self) -> pd.DataFrame:
        """
        输出:
        - DataFrame，列为 a, residue, count, stable, b_max
        """
        rows = []
        for a in range(1, self.a_max + 1):
            residues = [r for r in range(a) if gcd(r, a) == 1]
            for r in residues:
                bs = [b for b in range(a + 1, a + self.scan + 1) if b % a == r]
                values = [self._count(a, b) for b in bs]
                stable = self._stable(values)
                if not stable:
                    logger.warning("a=%d, b≡%d 在 b <= %d 内没有稳定", a, r, a + self.scan)
                rows.append({
                    "a": a,
                    "residue": r,
                    "count": values[-1] if values else None,
                    "stable": stable,
                    "b_max": bs[-1] if bs else None,
                })
        return pd.DataFrame(rows, columns=["a", "residue", "count", "stable", "b_max"])

    def right_table(self) -> pd.DataFrame:
        """
        输出:
        - DataFrame，列为 k, count, stable, a_max
        """
        rows = []
        for k in range(1, self.k_max + 1):
            as_ = [a for a in range(1, self.right_a_max + 1) if gcd(a, k) == 1]
            values = [self._count(a, a + k) for a in as_]
            stable = self._stable(values)
            if not stable:
                logger.warning("k=%d 在 a <= %d 内没有稳定", k, self.right_a_max)
            rows.append({"k": k, "count": values[-1] if values else None, "stable": stable, "a_max": as_[-1] if as_ else None})
        return pd.DataFrame(rows, columns=["k", "count", "stable", "a_max"])

    def compare(self, left: pd.DataFrame, right: pd.DataFrame) -> List[str]:
        """与随包发布的结果比较，返回差异描述"""
        mismatches = []
        for row in left.itertuples(index=False):
            expected = golden_left(row.a, row.residue)
            if expected is not None and row.count != expected:
                mismatches.append(f"a={row.a}, b≡{row.residue}: 计算 {row.count}, 期望 {expected}")
        for row in right.itertuples(index=False):
            expected = golden_right(row.k)
            if expected is not None and row.count != expected:
                mismatches.append(f"k={row.k}: 计算 {row.count}, 期望 {expected}")
        return mismatches

    def run(self, printlog: bool = False) -> Dict[str, Any]:
        """
        计算左右两表并比较

        返回:
        {'left': DataFrame, 'right': DataFrame, 'mismatches': [...], 'passed': bool}
        """
        left = self.left_table()
        right = self.right_table()
        mismatches = self.compare(left, right)
        if printlog:
            print("=" * 60)
            print("计数表（左）: 固定 a，按 b mod a")
            print("=" * 60)
            print(left.to_string(index=False))
            print("=" * 60)
            print("计数表（右）: △(a, a+k)")
            print("=" * 60)
            print(right.to_string(index=False))
            print("=" * 60)
            for line in mismatches:
                print(f"✗ {line}")
        return {"left": left, "right": right, "mismatches": mismatches, "passed": not mismatches}


if __name__ == "__main__":
    Table2Model().run(printlog=True)
