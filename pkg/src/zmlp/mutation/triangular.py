"""
直角三角形上的初等变异 α, β, τ, α⁻¹

标准位置 P(a,b) = Conv{(0,0),(b,0),(0,a)}，h = 1+x:
- α  = mut(φ = a - y)，P(a,b) → P(a, a+b)
- α⁻¹ = mut(φ = y - a)，可能不存在
- β  = mut(φ = ℓ·y - b) 之后做反射 y ↦ a - y，P(a,b) → P(a, ℓa - b)，ℓ = ℓ(𝐛)
- τ  交换 x, y
"""
from __future__ import annotations

from typing import List, Optional, Tuple

from zmlp.core.lattice import AffineFunctional, UnimodularAffineMap, standard_triangle
from zmlp.core.laurent import LaurentPoly
from zmlp.divisibility.partition import DualPair, make_partition, pair_degrees
from zmlp.divisibility.tuples import divstep
from zmlp.errors import NotInDomainError, NotTriangularError, ZmlpError
from zmlp.mutation.operator import CertificateStep, MutationSpec, is_mutable

MOVES = ("tau", "alpha", "alpha_inv", "beta")


def alpha_spec(a: int) -> MutationSpec:
    return MutationSpec.binomial(AffineFunctional((0, -1), a), (1, 0))


def beta_spec(b: int, ell: int) -> MutationSpec:
    return MutationSpec.binomial(AffineFunctional((0, ell), -b), (1, 0))


def reflect_y(a: int) -> UnimodularAffineMap:
    """y ↦ a - y"""
    return UnimodularAffineMap(((1, 0), (0, -1)), (0, a))


def triangular_steps(f: LaurentPoly, move: str) -> Optional[Tuple[LaurentPoly, List[CertificateStep]]]:
    """
    对 f 做一步初等变异，同时给出证书中的步骤（先送到标准位置）

    返回:
    (结果, 证书步骤)；α⁻¹ 不可变时返回 None
    """
    if move not in MOVES:
        raise ZmlpError(f"未知的初等变异: {move}")
    if move == "tau":
        return f.swap(), [CertificateStep(None, UnimodularAffineMap.swap(), "tau")]
    if f.newton_polygon().dim != 2:
        raise NotTriangularError(f"{f} 的牛顿多边形不是三角形")
    a, b, to_std = standard_triangle(f.newton_polygon())
    g = f.substitute(to_std)
    steps: List[CertificateStep] = []
    if g != f:
        steps.append(CertificateStep(None, to_std, "standardize"))
    if move == "alpha":
        spec = alpha_spec(a)
        step = CertificateStep(spec, label="alpha")
    elif move == "alpha_inv":
        spec = alpha_spec(a).inverse()
        if not is_mutable(g, spec):
            return None
        step = CertificateStep(spec, label="alpha_inv")
    else:
        horizontal = g.newton_polygon().edge_with_normal((0, 1))
        ell = divstep(g, horizontal)[0]
        step = CertificateStep(beta_spec(b, ell), reflect_y(a), "beta")
    steps.append(step)
    return step.apply(g), steps


def tau(f: LaurentPoly) -> LaurentPoly:
    """τ(f(x,y)) = f(y,x)"""
    return f.swap()


def alpha(f: LaurentPoly) -> LaurentPoly:
    return triangular_steps(f, "alpha")[0]


def alpha_inv(f: LaurentPoly) -> Optional[LaurentPoly]:
    found = triangular_steps(f, "alpha_inv")
    return None if found is None else found[0]


def beta(f: LaurentPoly) -> LaurentPoly:
    """β 是对合: β(β(f)) = f"""
    return triangular_steps(f, "beta")[0]


# ---- 对偶划分对层面 ----

def alpha_pair(pair: DualPair) -> DualPair:
    """(𝐚, 𝐛) ↦ (𝐚, sort(a :: 𝐛))"""
    a, _ = pair_degrees(pair)
    return pair[0], make_partition(pair[1] + (a,))


def alpha_inv_pair(pair: DualPair) -> Optional[DualPair]:
    """去掉 𝐛 中一个等于 a 的部分；没有时返回 None"""
    a, _ = pair_degrees(pair)
    if a not in pair[1]:
        return None
    parts = list(pair[1])
    parts.remove(a)
    return pair[0], make_partition(parts)


def beta_pair(pair: DualPair) -> DualPair:
    """
    (𝐚, 𝐛) ↦ (𝐚, sort(a - b₁, ..., a - b_l))，去掉为零的部分

    错误:
    某个 b_i > a 时抛出 NotInDomainError
    """
    a, _ = pair_degrees(pair)
    if any(b_i > a for b_i in pair[1]):
        raise NotInDomainError(f"β 不在定义域内: {pair}，存在 b_i > a = {a}")
    return pair[0], make_partition(a - b_i for b_i in pair[1] if a - b_i > 0)


def tau_pair(pair: DualPair) -> DualPair:
    return pair[1], pair[0]
