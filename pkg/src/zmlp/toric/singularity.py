"""
循环商奇点 1/r(w1,w2,w3) 的计算与等价判定
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import List, Sequence, Tuple

from zmlp.core.linalg import Vector3, det3, inverse_rows, smith_diagonal
from zmlp.errors import ConeError, NonCyclicQuotientError, ZmlpError


def units_mod(r: int) -> List[int]:
    return [u for u in range(1, r) if gcd(u, r) == 1] if r > 1 else [1]


def normal_form(r: int, weights: Sequence[int], units: bool = True, permutations: bool = True) -> Tuple[int, ...]:
    """
    在乘以单位、置换权重下的最小代表元

    示例:
    normal_form(2, (1, -1, -1))  # (1, 1, 1)
    """
    best = None
    for u in units_mod(r) if units else [1]:
        w = [(u * x) % r for x in weights]
        key = tuple(sorted(w)) if permutations else tuple(w)
        if best is None or key < best:
            best = key
    return best


@dataclass(frozen=True)
class QuotientSingularity:
    """
    𝔸³/ℤ_r，ℤ_r 以权重 (w1,w2,w3) 对角作用；权重按模 r 约化保存
    """
    r: int
    weights: Tuple[int, int, int]

    def __post_init__(self):
        if self.r < 1:
            raise ZmlpError(f"r 必须为正整数: {self.r}")
        object.__setattr__(self, "weights", tuple(w % self.r for w in self.weights))

    @property
    def normalized(self) -> Tuple[int, ...]:
        return normal_form(self.r, self.weights)

    @property
    def is_smooth(self) -> bool:
        return self.r == 1

    @property
    def is_isolated(self) -> bool:
        """每个权重都与 r 互素"""
        return all(gcd(w, self.r) == 1 for w in self.weights)

    def __str__(self) -> str:
        return f"1/{self.r}({','.join(str(w) for w in self.weights)})"

    def to_json(self) -> dict:
        return {"r": self.r, "weights": list(self.weights), "normalized": list(self.normalized)}


def sing_equivalent(
    s: QuotientSingularity,
    t: QuotientSingularity,
    units: bool = True,
    permutations: bool = True,
) -> bool:
    """
    两个类型是否等价

    参数:
    - units: 是否允许整体乘以模 r 的单位
    - permutations: 是否允许置换权重

    示例:
    sing_equivalent(QuotientSingularity(3, (1, -1, 4)), QuotientSingularity(3, (1, -1, 1)))  # True
    """
    if s.r != t.r:
        return False
    return normal_form(s.r, s.weights, units, permutations) == normal_form(t.r, t.weights, units, permutations)


def _order(r: int, w: Sequence[int]) -> int:
    g = r
    for x in w:
        g = gcd(g, x)
    return r // g


def singularity_type(generators: Sequence[Vector3]) -> QuotientSingularity:
    """
    单纯锥 ⟨v1,v2,v3⟩ 的奇点类型

    ℤ³/⟨v⟩ 的元素 p 记为 r·(p V⁻¹) mod r；取一个生成元即得权重

    参数:
    - generators: 三个线性无关的整向量（也可以传入 Cone3）

    错误:
    - ConeError: 生成元个数不为 3 或行列式为 0
    - NonCyclicQuotientError: 商群不是循环群

    示例:
    singularity_type([(1, 0, 0), (0, 1, 0), (1, -2, 3)])  # 1/3(1,-1,2) 的等价类
    """
    gens = [tuple(v) for v in getattr(generators, "generators", generators)]
    if len(gens) != 3:
        raise ConeError(f"需要单纯锥（3 个生成元）: {gens}")
    r = abs(det3(*gens))
    if r == 0:
        raise ConeError(f"生成元线性相关: {gens}")
    if r == 1:
        return QuotientSingularity(1, (0, 0, 0))
    if sum(1 for d in smith_diagonal([list(v) for v in gens]) if d != 1) > 1:
        raise NonCyclicQuotientError(f"ℤ³/⟨{gens}⟩ 不是循环群")
    inv = inverse_rows([list(v) for v in gens])
    images = [[int(r * inv[j][i]) % r for i in range(3)] for j in range(3)]
    x = [0, 0, 0]
    for w in images:
        best, best_order = x, _order(r, x)
        for c in range(1, r):
            cand = [(x[i] + c * w[i]) % r for i in range(3)]
            order = _order(r, cand)
            if order > best_order:
                best, best_order = cand, order
        x = best
        if best_order == r:
            break
    if _order(r, x) != r:
        raise NonCyclicQuotientError(f"ℤ³/⟨{gens}⟩ 找不到生成元")
    return QuotientSingularity(r, tuple(x))


def standard_type(a: int, b: int) -> QuotientSingularity:
    """1/a(1,-1,b)"""
    return QuotientSingularity(a, (1, -1, b))


if __name__ == "__main__":
    for cone in ([(1, 0, 0), (0, 1, 0), (1, -3, 5)], [(0, 0, 1), (1, 0, 1), (1, 2, 2)], [(1, 0, 0), (0, 1, 0), (1, 1, 4)]):
        s = singularity_type(cone)
        print(f"{cone} -> {s}, 规范形 {s.normalized}")
