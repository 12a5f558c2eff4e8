"""
由 reqdiv 元组重建零可变多项式
边界系数固定为二项式系数 C(ℓ(e), i)，内部系数由可除性线性条件唯一确定
"""
from __future__ import annotations

import logging
from math import comb, gcd
from typing import Dict, List, Optional, Sequence

from zmlp.core.lattice import LatticePolygon, triangle
from zmlp.core.laurent import INF, LaurentPoly
from zmlp.core.linalg import solve_unique
from zmlp.divisibility.partition import DualPair, conjugate, pair_degrees, suffix_sums
from zmlp.divisibility.tuples import DivTuple, layout_for
from zmlp.errors import NotInDomainError, ZmlpError

logger = logging.getLogger(__name__)


def reconstruct_from_reqdiv(poly: LatticePolygon, tuples: Sequence[DivTuple]) -> Optional[LaurentPoly]:
    """
    解线性方程组重建 f

    参数:
    - poly: 牛顿多边形
    - tuples: 各条边的 reqdiv 元组（按 DivTuple.edge 对应到 poly.edges）

    返回:
    唯一的整系数解；方程组矛盾、解不唯一或解不是整数时返回 None
    """
    layout = layout_for(poly)
    constraints: Dict[int, List[int]] = {}
    for t in tuples:
        if t.edge >= len(poly.edges):
            raise ZmlpError(f"边序号 {t.edge} 超出范围")
        if len(t.values) != layout.level_count(t.edge):
            raise ZmlpError(f"边 {t.edge} 的元组长度 {len(t.values)} 与层数 {layout.level_count(t.edge)} 不符")
        constraints[t.edge] = [0 if v is INF else v for v in t.values]
    rows = layout.constraint_rows(constraints)
    rhs = [0] * len(rows)
    for edge in poly.edges:
        for i, p in enumerate(layout.edge_points(edge)):
            row = [0] * layout.size
            row[layout.index[p]] = 1
            rows.append(row)
            rhs.append(comb(edge.length, i))
    solution = solve_unique(rows, rhs, layout.size)
    if solution is None:
        logger.debug("重建失败: %s 上的方程组无解或解不唯一", poly)
        return None
    if any(v.denominator != 1 for v in solution):
        logger.debug("重建失败: %s 上的解不是整数", poly)
        return None
    return LaurentPoly({p: int(v) for p, v in zip(layout.points, solution)})


def pair_tuples(pair: DualPair) -> List[DivTuple]:
    """
    标准位置 P(a,b) 上由对偶划分对给出的 reqdiv 元组

    横边: conj(𝐛) 的后缀和；竖边: conj(𝐚) 的后缀和；斜边: (1,0,...,0)
    """
    a, b = pair_degrees(pair)
    if a == 0 or b == 0:
        raise NotInDomainError(f"划分对 {pair} 不对应二维三角形")
    if gcd(a, b) != 1:
        raise NotInDomainError(f"gcd({a},{b}) != 1，斜边的步长未知")
    poly = triangle(a, b)
    layout = layout_for(poly)
    out = []
    for edge in poly.edges:
        n_levels = layout.level_count(edge.index)
        if edge.normal == (0, 1):
            values = suffix_sums(conjugate(pair[1]), n_levels)
        elif edge.normal == (1, 0):
            values = suffix_sums(conjugate(pair[0]), n_levels)
        else:
            values = [1] + [0] * (n_levels - 1)
        out.append(DivTuple(edge.index, tuple(values)))
    return out


def zmlp_from_pair(pair: DualPair) -> Optional[LaurentPoly]:
    """
    由对偶划分对重建 P(a,b) 上的零可变多项式

    示例:
    zmlp_from_pair(((1, 1), (2, 1))).to_rows()  # [[1, 3, 3, 1], [2, 2], [1]]
    """
    a, b = pair_degrees(pair)
    return reconstruct_from_reqdiv(triangle(a, b), pair_tuples(pair))
