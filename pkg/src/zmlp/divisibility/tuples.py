"""
可除性元组 div / reqdiv 与可除性步长 divstep

约定:
- 对多边形的边 e，第 k 层是到 e 格距离为 k 的格点 (k = 0 是边本身)
- div_e(f)_k = (1+z^{m_e}) 在第 k 层切片中的重数；切片为零或该层没有格点时为 ∞
- reqdiv 对所有边联合求解，∞ 的层在 reqdiv 中取有限值
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

from zmlp.core.lattice import (
    Edge,
    LatticePoint,
    LatticePolygon,
    dot,
    lattice_point_count,
    lattice_points,
    primitive,
    standard_triangle,
)
from zmlp.core.laurent import INF, DivValue, LaurentPoly, binomial_multiplicity, exact_divide
from zmlp.core.linalg import is_zero_on, nullspace
from zmlp.divisibility.partition import DualPair, Partition, conjugate, make_partition
from zmlp.errors import NotTriangularError, ReducibleInputError, ZmlpError

logger = logging.getLogger(__name__)

EdgeRef = Union[int, Edge]


@dataclass(frozen=True)
class DivTuple:
    """
    一条边上按层排列的可除性元组

    - edge: 边在牛顿多边形中的序号
    - values: 第 0..k_max 层的取值（整数或 INF）
    """
    edge: int
    values: Tuple[DivValue, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> DivValue:
        return self.values[k]

    def __iter__(self):
        return iter(self.values)

    @property
    def is_finite(self) -> bool:
        return all(v is not INF for v in self.values)

    def finite_values(self) -> List[int]:
        return [v for v in self.values if v is not INF]

    def to_json(self) -> dict:
        return {
            "edge": self.edge,
            "levels": [0, len(self.values) - 1],
            "values": ["inf" if v is INF else v for v in self.values],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DivTuple":
        return cls(int(data["edge"]), tuple(INF if v == "inf" else int(v) for v in data["values"]))

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.values) + ")"


def _edge_of(poly: LatticePolygon, e: EdgeRef) -> Edge:
    if isinstance(e, Edge):
        return e
    return poly.edges[e]


class LevelLayout:
    """
    多边形格点的分层结构，以及每层的 j 阶可除性线性函数

    第 k 层的格点按 m_e 方向排列，位置 t = 0, 1, ...；
    D_j(c) = Σ_p c_p·C(t_p, j)·(-1)^{t_p - j} 是该层一元多项式在 t = -1 处的 j 阶 Taylor 系数
    """

    def __init__(self, poly: LatticePolygon):
        self.poly = poly
        self.points: List[LatticePoint] = lattice_points(poly)
        self.index: Dict[LatticePoint, int] = {p: i for i, p in enumerate(self.points)}
        self.levels: Dict[int, List[List[Tuple[int, int]]]] = {}
        for edge in poly.edges:
            k_max = max(edge.level(v) for v in poly.vertices)
            buckets: List[List[LatticePoint]] = [[] for _ in range(k_max + 1)]
            for p in self.points:
                buckets[edge.level(p)].append(p)
            norm = dot(edge.tangent, edge.tangent)
            rows = []
            for bucket in buckets:
                bucket.sort(key=lambda p: dot(p, edge.tangent))
                if bucket:
                    # 同层相邻格点相差一个本原切向量
                    base = dot(bucket[0], edge.tangent)
                    rows.append([(self.index[p], (dot(p, edge.tangent) - base) // norm) for p in bucket])
                else:
                    rows.append([])
            self.levels[edge.index] = rows
        self._cache: Dict[Tuple[int, int, int], List[int]] = {}

    @property
    def size(self) -> int:
        return len(self.points)

    def level_count(self, edge: int) -> int:
        return len(self.levels[edge])

    def level_size(self, edge: int, k: int) -> int:
        return len(self.levels[edge][k])

    def functional(self, edge: int, k: int, j: int) -> List[int]:
        key = (edge, k, j)
        if key not in self._cache:
            row = [0] * self.size
            for idx, t in self.levels[edge][k]:
                if t >= j:
                    row[idx] = comb(t, j) * (-1) ** (t - j)
            self._cache[key] = row
        return self._cache[key]

    def constraint_rows(self, tuples: Dict[int, Sequence[int]]) -> List[List[int]]:
        """所有 (边, 层, j < T) 的线性条件"""
        rows = []
        for edge, values in tuples.items():
            for k, t in enumerate(values):
                for j in range(min(t, self.level_size(edge, k))):
                    rows.append(self.functional(edge, k, j))
        return rows

    def edge_points(self, edge: Edge) -> List[LatticePoint]:
        return [
            (edge.start[0] + i * edge.tangent[0], edge.start[1] + i * edge.tangent[1])
            for i in range(edge.length + 1)
        ]


@lru_cache(maxsize=256)
def layout_for(poly: LatticePolygon) -> LevelLayout:
    return LevelLayout(poly)


def div_tuple(f: LaurentPoly, e: EdgeRef) -> DivTuple:
    """
    div_e(f)

    示例:
    tom = LaurentPoly.parse("(1+x)^3 + 2*y*(1+x) + y^2")
    div_tuple(tom, 0)  # (3,1,0)
    """
    poly = f.newton_polygon()
    edge = _edge_of(poly, e)
    layout = layout_for(poly)
    values: List[DivValue] = []
    for row in layout.levels[edge.index]:
        if not row:
            values.append(INF)
            continue
        g = LaurentPoly({layout.points[idx]: f.coeff(layout.points[idx]) for idx, _ in row})
        values.append(binomial_multiplicity(g, edge.tangent))
    return DivTuple(edge.index, tuple(values))


def reddiv(f: LaurentPoly, direction: LatticePoint) -> int:
    """
    可约可除性: (1+z^m) 在所有平行于 m 的切片中的公共重数
    """
    m, _ = primitive(direction)
    n = (-m[1], m[0])
    buckets: Dict[int, Dict[LatticePoint, int]] = {}
    for exp, c in f.items():
        buckets.setdefault(dot(n, exp), {})[exp] = c
    return min(binomial_multiplicity(LaurentPoly(b), m) for b in buckets.values())


def is_convex_tuple(values: Sequence[int]) -> bool:
    """d_k - d_{k-1} <= d_{k+1} - d_k"""
    return all(
        values[k] - values[k - 1] <= values[k + 1] - values[k]
        for k in range(1, len(values) - 1)
    )


@dataclass
class ReqDivResult:
    """
    联合求解的 reqdiv

    - tuples: 按边序号排列的 DivTuple
    - unique: 反向的 tie-break 是否得到同一个结果
    - alternative: 不唯一时另一个极小解
    """
    tuples: List[DivTuple]
    unique: bool = True
    alternative: Optional[List[DivTuple]] = field(default=None)

    def __getitem__(self, edge: int) -> DivTuple:
        return self.tuples[edge]


class _ReqDivSearch:
    """贪心下降求 reqdiv"""

    def __init__(self, f: LaurentPoly):
        self.poly = f.newton_polygon()
        self.layout = layout_for(self.poly)
        self.div = {e.index: div_tuple(f, e).values for e in self.poly.edges}
        self.vertex_rows = []
        for v in self.poly.vertices:
            row = [0] * self.layout.size
            row[self.layout.index[v]] = 1
            self.vertex_rows.append(row)

    def start(self) -> Dict[int, List[int]]:
        return {
            e: [
                self.layout.level_size(e, k) if d is INF else d
                for k, d in enumerate(values)
            ]
            for e, values in self.div.items()
        }

    def admissible(self, tuples: Dict[int, List[int]]) -> bool:
        """一般元素的可除性恰好等于 div(f)，且所有顶点系数一般非零"""
        basis = nullspace(self.layout.constraint_rows(tuples), self.layout.size)
        for row in self.vertex_rows:
            if is_zero_on(row, basis):
                return False
        for e, values in self.div.items():
            for k, d in enumerate(values):
                n_k = self.layout.level_size(e, k)
                stop = n_k if d is INF else d
                for j in range(min(tuples[e][k], n_k), stop):
                    if not is_zero_on(self.layout.functional(e, k, j), basis):
                        return False
                if d is not INF and is_zero_on(self.layout.functional(e, k, d), basis):
                    return False
        return True

    def descend(self, edge_descending: bool) -> Dict[int, List[int]]:
        tuples = self.start()
        order = sorted(
            ((k, e) for e, values in tuples.items() for k in range(1, len(values))),
            key=lambda item: (item[0], -item[1] if edge_descending else item[1]),
        )
        changed = True
        while changed:
            changed = False
            for k, e in order:
                while tuples[e][k] > 0:
                    trial = {key: list(vals) for key, vals in tuples.items()}
                    trial[e][k] -= 1
                    if not (is_convex_tuple(trial[e]) or not is_convex_tuple(tuples[e])):
                        break
                    if not self.admissible(trial):
                        break
                    logger.debug("reqdiv 下降: 边 %d 第 %d 层 -> %d", e, k, trial[e][k])
                    tuples = trial
                    changed = True
        return tuples


@lru_cache(maxsize=512)
def reqdiv(f: LaurentPoly) -> ReqDivResult:
    """
    所有边联合的 reqdiv

    从 div（∞ 换成该层格点数）出发，按（层升序，边序号降序）逐个降低，
    只接受仍可容许且不破坏凸性的降低，直到不动点；再用边序号升序重跑一遍检查唯一性。
    """
    search = _ReqDivSearch(f)
    if search.poly.dim < 2:
        tuples = [DivTuple(e, tuple(v if v is not INF else 0 for v in vals)) for e, vals in search.div.items()]
        return ReqDivResult(tuples)
    first = search.descend(edge_descending=True)
    second = search.descend(edge_descending=False)
    tuples = [DivTuple(e, tuple(first[e])) for e in sorted(first)]
    if first == second:
        return ReqDivResult(tuples)
    logger.debug("reqdiv 不唯一: %s vs %s", first, second)
    alternative = [DivTuple(e, tuple(second[e])) for e in sorted(second)]
    return ReqDivResult(tuples, unique=False, alternative=alternative)


def reqdiv_tuple(f: LaurentPoly, e: EdgeRef) -> DivTuple:
    """
    reqdiv_e(f)

    示例:
    fig7 = LaurentPoly.parse("(1+x)^2 + x*y^2")
    reqdiv_tuple(fig7, 0)  # (2,1,0)，而 div 为 (2,∞,0)
    """
    poly = f.newton_polygon()
    return reqdiv(f)[_edge_of(poly, e).index]


def _steps_from_tuple(values: Sequence[int]) -> Partition:
    steps = []
    for k in range(len(values) - 1):
        if values[k] == 0:
            break
        steps.append(values[k] - values[k + 1])
    if values and values[-1] > 0:
        steps.append(values[-1])
    return make_partition(s for s in steps if s > 0)


def divstep(
    f: LaurentPoly,
    e: EdgeRef,
    factorization: Optional[Sequence[LaurentPoly]] = None,
    auto_factor: bool = True,
) -> Partition:
    """
    可除性步长 divstep_e(f)

    参数:
    - f: 多项式
    - e: 牛顿多边形的边（序号或 Edge）
    - factorization: 可约时的因子列表；没有同一内法向边的因子（点、线段等）不贡献
    - auto_factor: 不给因子时自动剥掉 (1+z^{m_e})^{reddiv}；为 False 时可约输入直接报错

    返回:
    递减划分（不可约 ZMLP 时是 ℓ(e) 的划分）
    """
    poly = f.newton_polygon()
    edge = _edge_of(poly, e)
    if factorization is not None:
        product = LaurentPoly.one()
        for g in factorization:
            product = product * g
        if product != f:
            raise ZmlpError("因子的乘积不等于 f")
        parts: List[int] = []
        for g in factorization:
            gp = g.newton_polygon()
            if gp.dim < 2:
                continue
            g_edge = gp.edge_with_normal(edge.normal)
            if g_edge is not None:
                parts.extend(divstep(g, g_edge))
        return make_partition(parts)

    r = reddiv(f, edge.tangent)
    if r > 0:
        if not auto_factor:
            raise ReducibleInputError(f"(1+z^{edge.tangent})^{r} 整除 f")
        q = exact_divide(f, LaurentPoly.binomial_power(edge.tangent, r))
        if q is None:
            raise ZmlpError(f"无法剥掉 (1+z^{edge.tangent})^{r}")
        qp = q.newton_polygon()
        q_edge = qp.edge_with_normal(edge.normal) if qp.dim == 2 else None
        if q_edge is None:
            return ()
        return divstep(q, q_edge)
    if poly.dim < 2:
        return ()
    return _steps_from_tuple(reqdiv_tuple(f, edge).values)


def dual_tuple(f: LaurentPoly) -> List[Partition]:
    """各条边 divstep 的共轭划分"""
    poly = f.newton_polygon()
    return [conjugate(divstep(f, e)) for e in poly.edges]


def standardize(f: LaurentPoly) -> Tuple[int, int, LaurentPoly]:
    """把牛顿多边形是直角三角形的 f 送到标准位置 P(a,b)"""
    if f.is_zero:
        raise NotTriangularError("零多项式")
    a, b, to_std = standard_triangle(f.newton_polygon())
    return a, b, f.substitute(to_std)


def dual_pair(f: LaurentPoly) -> DualPair:
    """
    直角三角形上的对偶划分对 (𝐚, 𝐛)

    标准位置 P(a,b) = Conv{(0,0),(b,0),(0,a)}: 𝐚 来自竖边（长 a），𝐛 来自横边（长 b）

    示例:
    dual_pair(LaurentPoly.parse("(1+x)^3 + 2*y*(1+x) + y^2"))  # ((1,1),(2,1))
    """
    _, _, g = standardize(f)
    poly = g.newton_polygon()
    vertical = poly.edge_with_normal((1, 0))
    horizontal = poly.edge_with_normal((0, 1))
    return conjugate(divstep(g, vertical)), conjugate(divstep(g, horizontal))


def _distinct_directions(poly: LatticePolygon) -> List[Edge]:
    """平行边只取第一条"""
    seen = set()
    out = []
    for e in poly.edges:
        key = e.tangent if e.tangent > (-e.tangent[0], -e.tangent[1]) else (-e.tangent[0], -e.tangent[1])
        if key in seen:
            continue
        seen.add(key)
        out.append(e)
    return out


def reqdiv_total(f: LaurentPoly) -> int:
    """Σ_e Σ_k reqdiv_e(f)_k（平行边只计一次）"""
    result = reqdiv(f)
    return sum(sum(result[e.index].values) for e in _distinct_directions(f.newton_polygon()))


@dataclass
class ZeroMutReport:
    """
    零可变多项式性质的检查结果

    - convex: 每条边的 reqdiv 是否凸
    - total: reqdiv 总和
    - lattice_points: 牛顿多边形的格点数
    """
    convex: Dict[int, bool]
    total: int
    lattice_points: int

    @property
    def total_matches(self) -> bool:
        return self.total == self.lattice_points

    @property
    def passed(self) -> bool:
        return self.total_matches and all(self.convex.values())


def verify_zeromut_props(f: LaurentPoly, tuples: Optional[Sequence[DivTuple]] = None) -> ZeroMutReport:
    """
    检查 reqdiv 的凸性和总和等于格点数

    参数:
    - tuples: 可选，手工给出的元组（默认用 reqdiv(f)）
    """
    poly = f.newton_polygon()
    if tuples is None:
        tuples = reqdiv(f).tuples
    by_edge = {t.edge: t for t in tuples}
    convex = {e: is_convex_tuple(t.finite_values()) for e, t in by_edge.items()}
    total = sum(
        sum(by_edge[e.index].finite_values())
        for e in _distinct_directions(poly)
        if e.index in by_edge
    )
    return ZeroMutReport(convex, total, lattice_point_count(poly))


if __name__ == "__main__":
    tom = LaurentPoly.parse("(1+x)^3 + 2*y*(1+x) + y^2")
    for edge in tom.newton_polygon().edges:
        print(edge.index, div_tuple(tom, edge), reqdiv_tuple(tom, edge), divstep(tom, edge))
    print("dual pair:", dual_pair(tom))
