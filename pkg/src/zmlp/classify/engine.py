"""
小三角形上的批量验证引擎
对每个互素的 (a,b): 枚举 ZMLP_comb(a,b)，三角形约化，重建多项式并回放证书
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from math import gcd
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from zmlp.classify.enumeration import enumerate_comb
from zmlp.classify.families import classify_family
from zmlp.classify.reduce import poly_certificate, triangular_reduce
from zmlp.classify.search import verify_zmlp
from zmlp.divisibility.partition import format_pair
from zmlp.divisibility.reconstruct import zmlp_from_pair
from zmlp.errors import ZmlpError

logger = logging.getLogger(__name__)

MAX_LIMIT = 13

COLUMNS = [
    "a", "b", "pair", "family", "moves", "triangular",
    "reconstructed", "replayed", "searched", "steps", "status",
]


def _verify_triangle(task: Tuple[int, int, bool, int, int]) -> List[Dict[str, Any]]:
    """一个 (a,b) 上的全部验证；放在模块顶层以便进程池调用"""
    a, b, search, depth_bound, node_bound = task
    rows = []
    for pair in enumerate_comb(a, b):
        row = {
            "a": a,
            "b": b,
            "pair": format_pair(pair),
            "family": classify_family(pair, a, b).value,
            "moves": None,
            "triangular": False,
            "reconstructed": False,
            "replayed": False,
            "searched": False,
            "steps": 0,
            "status": "fail",
        }
        f = zmlp_from_pair(pair)
        row["reconstructed"] = f is not None
        moves = triangular_reduce(pair)
        if f is None:
            rows.append(row)
            continue
        if moves is not None:
            row["triangular"] = True
            row["moves"] = ",".join(moves)
            try:
                cert = poly_certificate(f, moves)
            except ZmlpError as exc:
                logger.warning("(%d,%d) %s 回放失败: %s", a, b, row["pair"], exc)
                rows.append(row)
                continue
            row["replayed"] = cert.replay()
            row["steps"] = cert.mutation_count
            row["status"] = "pass" if row["replayed"] else "fail"
        else:
            row["status"] = "flagged"
            if search:
                row["searched"] = True
                cert = verify_zmlp(f, depth_bound=depth_bound, node_bound=node_bound)
                if cert is not None and cert.replay():
                    row["replayed"] = True
                    row["steps"] = cert.mutation_count
                    row["moves"] = "search"
                    row["status"] = "searched"
        rows.append(row)
    return rows


class VerificationEngine:
    """
    a + b <= limit 的批量验证

    没有三角形约化的对偶划分对标记为 flagged（需要非三角形变异），不算失败；
    打开 search_nontriangular 且一般搜索找到可回放证书时标记为 searched；
    只有重建或回放失败才算失败
    """

    def __init__(
        self,
        limit: int = 11,
        jobs: int = 1,
        printlog: bool = False,
        search_nontriangular: bool = False,
        depth_bound: int = 10,
        node_bound: int = 5000,
    ):
        """
        初始化验证引擎

        参数:
        - limit: a + b 的上界（默认 11，最大 13）
        - jobs: 并行进程数
        - printlog: 是否打印日志
        - search_nontriangular: 对 flagged 的划分对是否做一般证书搜索
        - depth_bound / node_bound: 一般搜索的界
        """
        if limit > MAX_LIMIT:
            raise ZmlpError(f"limit 不能超过 {MAX_LIMIT}: {limit}")
        if jobs < 1:
            raise ZmlpError(f"jobs 必须为正: {jobs}")
        self.limit = limit
        self.jobs = jobs
        self.printlog = printlog
        self.search_nontriangular = search_nontriangular
        self.depth_bound = depth_bound
        self.node_bound = node_bound
        self._triangles: List[Tuple[int, int]] = []

    def add_triangle(self, a: int, b: int):
        """
        添加一个三角形 △(a,b)

        返回:
        self（支持链式调用）
        """
        if a < 1 or b < 1:
            raise ZmlpError(f"a, b 必须为正整数: ({a}, {b})")
        if (a, b) not in self._triangles:
            self._triangles.append((a, b))
        return self

    def add_range(self, limit: Optional[int] = None):
        """
        添加所有 gcd(a,b) = 1 且 a + b <= limit 的三角形（默认用引擎的 limit）

        示例:
        VerificationEngine(limit=5).add_range().run()
        """
        limit = self.limit if limit is None else limit
        if limit > MAX_LIMIT:
            raise ZmlpError(f"limit 不能超过 {MAX_LIMIT}: {limit}")
        for total in range(2, limit + 1):
            for a in range(1, total):
                b = total - a
                if gcd(a, b) == 1:
                    self.add_triangle(a, b)
        return self

    def run(self) -> Dict[str, Any]:
        """
        运行验证

        返回:
        {'rows': DataFrame, 'passed': bool, 'flagged': [...], 'searched': [...], 'failures': [...]}
        """
        if not self._triangles:
            self.add_range()
        tasks = [(a, b, self.search_nontriangular, self.depth_bound, self.node_bound) for a, b in self._triangles]

        if self.printlog:
            print("=" * 60)
            print("开始验证")
            print("=" * 60)
            print(f"三角形个数: {len(tasks)}")
            print(f"并行进程数: {self.jobs}")
            print("=" * 60)

        if self.jobs > 1:
            with ProcessPoolExecutor(max_workers=self.jobs) as pool:
                chunks = list(pool.map(_verify_triangle, tasks))
        else:
            chunks = [_verify_triangle(t) for t in tasks]

        rows = [row for chunk in chunks for row in chunk]
        df = pd.DataFrame(rows, columns=COLUMNS)
        failures = df[df["status"] == "fail"]
        flagged = df[df["status"] == "flagged"]
        searched = df[df["status"] == "searched"]
        result = {
            "rows": df,
            "passed": failures.empty,
            "flagged": [(int(a), int(b), p) for a, b, p in zip(flagged["a"], flagged["b"], flagged["pair"])],
            "searched": [(int(a), int(b), p) for a, b, p in zip(searched["a"], searched["b"], searched["pair"])],
            "failures": [(int(a), int(b), p) for a, b, p in zip(failures["a"], failures["b"], failures["pair"])],
        }

        if self.printlog:
            print("\n" + "=" * 60)
            print("验证结果")
            print("=" * 60)
            print(f"划分对总数: {len(df)}")
            print(f"通过: {int((df['status'] == 'pass').sum())}")
            print(f"需要非三角形变异: {len(flagged)}")
            print(f"一般搜索验证: {len(searched)}")
            print(f"失败: {len(failures)}")
            print("=" * 60)

        return result


if __name__ == "__main__":
    result = VerificationEngine(limit=11, printlog=True).add_range().run()
    print(result["rows"].to_string(index=False))
