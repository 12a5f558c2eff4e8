"""
ZMLP_comb(a,b) 的枚举与计数

ZMLP_comb(a,b) 是满足以下条件的对偶划分对 (𝐚, 𝐛):
- 𝐚 ⊢ a，𝐛 ⊢ b
- Σ a_i² + Σ b_j² = ab + 1
- max(𝐚) <= b，max(𝐛) <= a，max(𝐚) + max(𝐛) <= max(a,b)
"""
from __future__ import annotations

import logging
from math import gcd
from typing import List

import numpy as np

from zmlp.divisibility.partition import (
    DualPair,
    exists_inequalities,
    partitions,
    partitions_with_squares,
    square_sum,
)
from zmlp.errors import ZmlpError

logger = logging.getLogger(__name__)


def _check_args(a: int, b: int) -> None:
    if a < 1 or b < 1:
        raise ZmlpError(f"a, b 必须为正整数: ({a}, {b})")
    if gcd(a, b) != 1:
        logger.warning("gcd(%d, %d) != 1，平方和恒等式只对互素的 (a,b) 成立", a, b)


def enumerate_comb(a: int, b: int) -> List[DualPair]:
    """
    枚举 ZMLP_comb(a,b)

    返回:
    按 (𝐚, 𝐛) 字典序排列的对偶划分对列表

    示例:
    enumerate_comb(2, 3)  # [((1, 1), (2, 1)), ((2,), (1, 1, 1))]
    """
    _check_args(a, b)
    target = a * b + 1
    out: List[DualPair] = []
    for pa in partitions(a, min(a, b)):
        rest = target - square_sum(pa)
        bound = min(a, max(a, b) - pa[0])
        if rest < b or bound < 1:
            continue
        for pb in partitions_with_squares(b, bound, rest):
            out.append((pa, pb))
    for pair in out:
        assert exists_inequalities(pair), pair
    return sorted(out)


def _exact_max_tables(n_values: List[int], max_part: int, max_square: int) -> dict:
    """
    对每个 n ∈ n_values，返回矩阵 M[p, s] = n 的最大部分恰为 p、平方和为 s 的划分个数
    """
    max_n = max(n_values)
    table = np.zeros((max_n + 1, max_square + 1), dtype=np.int64)
    table[0, 0] = 1
    snapshots = {n: np.zeros((max_part + 1, max_square + 1), dtype=np.int64) for n in n_values}
    for n in n_values:
        snapshots[n][0] = table[n]
    for p in range(1, max_part + 1):
        sq = p * p
        if sq <= max_square:
            # 无界背包: n 升序时 table[n - p] 已含本轮的 p
            for n in range(p, max_n + 1):
                table[n, sq:] += table[n - p, : max_square + 1 - sq]
        for n in n_values:
            snapshots[n][p] = table[n]
    exact = {}
    for n, snap in snapshots.items():
        exact[n] = np.diff(snap, axis=0, prepend=np.zeros((1, max_square + 1), dtype=np.int64))
    return exact


def count_comb(a: int, b: int) -> int:
    """
    |ZMLP_comb(a,b)|，按最大部分 × 平方和做动态规划，不逐个枚举

    与 len(enumerate_comb(a, b)) 相等
    """
    _check_args(a, b)
    top = max(a, b)
    target = a * b + 1
    tables = _exact_max_tables(sorted({a, b}), top, target)
    amat, bmat = tables[a], tables[b]
    # conv[p, q] = Σ_s A[p, s]·B[q, target - s]
    conv = amat @ bmat[:, ::-1].T
    p = np.arange(top + 1)[:, None]
    q = np.arange(top + 1)[None, :]
    mask = (p >= 1) & (q >= 1) & (p <= min(a, b)) & (q <= a) & (p + q <= top)
    return int(conv[mask].sum())


if __name__ == "__main__":
    for a, b in [(2, 3), (3, 7), (5, 7), (5, 101)]:
        pairs = enumerate_comb(a, b)
        print(f"ZMLP_comb({a},{b}): {len(pairs)} 个, DP 计数 {count_comb(a, b)}")
