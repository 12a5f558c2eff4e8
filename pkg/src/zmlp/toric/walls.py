"""
墙函数 f_ω = Π (u^{d_i} - λ_i z)

每条边 e 的对偶划分 (d_1,...,d_r) 给出一个墙函数，次数等于 ℓ(e)。
λ_i 用 sympy 符号表示，默认两两不同；也可以用预设的取值。
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import sympy as sp

from zmlp.core.lattice import LatticePolygon, boundary_closes, triangle
from zmlp.divisibility.partition import DualPair, Partition, degree, pair_degrees
from zmlp.errors import ZmlpError

U, Z = sp.symbols("u z")

# 三角形 P(a,b) 的边 → (除子名, 参数字母)；边按 底边、斜边、竖边 排列
TRIANGLE_WALLS = (("D12", "c"), ("D23", "a"), ("D13", "b"))

PRESET = {"a1": 0, "b1": 0, "c1": 0, "b2": -1, "c2": -1, "c3": 1}


@dataclass(frozen=True)
class WallFunction:
    """
    一条边上的墙函数

    - name: 除子名（三角形上为 D12/D23/D13）
    - exponents: 对偶划分 (d_1,...,d_r)
    - parameters: λ_1..λ_r（符号或取值）
    """
    name: str
    edge: int
    exponents: Partition
    parameters: Tuple[sp.Expr, ...]

    @property
    def degree(self) -> int:
        return degree(self.exponents)

    @property
    def expr(self) -> sp.Expr:
        return sp.Mul(*[U ** d - lam * Z for d, lam in zip(self.exponents, self.parameters)])

    def __str__(self) -> str:
        return f"f_{self.name} = {sp.factor(self.expr)}"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "edge": self.edge,
            "exponents": list(self.exponents),
            "parameters": [str(p) for p in self.parameters],
            "expr": str(self.expr),
            "degree": self.degree,
        }


@dataclass
class WallReport:
    walls: List[WallFunction]
    closes: bool
    degree_sum: int
    perimeter: int

    @property
    def passed(self) -> bool:
        return self.closes and self.degree_sum == self.perimeter

    def to_json(self) -> dict:
        return {
            "walls": [w.to_json() for w in self.walls],
            "closes": self.closes,
            "degree_sum": self.degree_sum,
            "perimeter": self.perimeter,
        }


def _parameters(letter: str, count: int, policy: Union[str, Dict[str, int]]) -> Tuple[sp.Expr, ...]:
    assigned = {}
    if policy == "preset":
        assigned = PRESET
    elif isinstance(policy, dict):
        assigned = policy
    elif policy != "generic":
        raise ZmlpError(f"未知的参数策略: {policy}")
    out = []
    for i in range(1, count + 1):
        name = f"{letter}{i}"
        out.append(sp.Integer(assigned[name]) if name in assigned else sp.Symbol(name))
    return tuple(out)


def wall_functions(
    poly: LatticePolygon,
    partitions: Sequence[Sequence[int]],
    lambdas: Union[str, Dict[str, int]] = "generic",
    names: Optional[Sequence[Tuple[str, str]]] = None,
) -> WallReport:
    """
    按边构造墙函数并检查闭合条件 Σ ℓ(e)·m_e = 0

    参数:
    - poly: 多边形
    - partitions: 按边顺序给出的对偶划分
    - lambdas: "generic"（两两不同的符号）、"preset"（a1=b1=c1=0, b2=c2=-1, c3=1）或名字到取值的字典
    - names: 每条边的 (除子名, 参数字母)，默认 (W{i}, λ{i}_)

    错误:
    划分的次数不等于边的格长度时抛出 ZmlpError
    """
    edges = poly.edges
    if len(partitions) != len(edges):
        raise ZmlpError(f"需要 {len(edges)} 个划分，得到 {len(partitions)} 个")
    walls = []
    for i, (edge, part) in enumerate(zip(edges, partitions)):
        if degree(part) != edge.length:
            raise ZmlpError(f"第 {i} 条边长度为 {edge.length}，划分 {tuple(part)} 的次数为 {degree(part)}")
        name, letter = names[i] if names is not None else (f"W{i}", f"λ{i}_")
        walls.append(WallFunction(name, i, tuple(part), _parameters(letter, len(part), lambdas)))
    perimeter = sum(e.length for e in edges)
    return WallReport(walls, boundary_closes(poly), sum(w.degree for w in walls), perimeter)


def triangle_walls(pair: DualPair, lambdas: Union[str, Dict[str, int]] = "generic") -> WallReport:
    """
    P(a,b) 上由对偶划分对 (𝐚, 𝐛) 给出的三个墙函数: D12 ↔ 𝐛，D23 ↔ (1)，D13 ↔ 𝐚

    示例:
    triangle_walls(((1, 1), (2, 1)))  # f_D12 = (u² - c1·z)(u - c2·z), ...
    """
    a, b = pair_degrees(pair)
    poly = triangle(a, b)
    hyp = poly.edges[1].length
    return wall_functions(poly, [pair[1], (1,) * hyp, pair[0]], lambdas, TRIANGLE_WALLS)


if __name__ == "__main__":
    for label, pair in (("Tom", ((1, 1), (2, 1))), ("Jerry", ((2,), (1, 1, 1)))):
        report = triangle_walls(pair)
        print(f"{label}:")
        for w in report.walls:
            print(f"  {w}")
        print(f"  闭合: {report.closes}, 次数和 {report.degree_sum} = 周长 {report.perimeter}")
