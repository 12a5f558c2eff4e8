"""
变异算子 mut_(φ,h)
f = Σ_k f_k 按 φ 的层切片，mut(f) = Σ_k h^k f_k；负层需要能被 h^{-k} 整除
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from zmlp.core.lattice import (
    AffineFunctional,
    LatticePoint,
    LatticePolygon,
    UnimodularAffineMap,
    add,
    convex_hull,
    dot,
    primitive,
    scale,
    sub,
)
from zmlp.core.laurent import LaurentPoly, exact_divide, slices
from zmlp.errors import InvalidMutationSpecError, NotMutableError

logger = logging.getLogger(__name__)


def _binomial_form(h: LaurentPoly) -> Tuple[LatticePoint, LatticePoint, int]:
    """把 h 写成 z^shift·(1+z^m)^k，返回 (shift, m, k)；不是这种形式时抛错"""
    if h.is_zero:
        raise InvalidMutationSpecError("h 不能为零")
    support = h.support
    if len(support) == 1:
        raise InvalidMutationSpecError(f"h = {h} 是单项式，不是 z^c(1+z^m)^k 的形式")
    shift = support[0]
    m, k = primitive(sub(support[-1], shift))
    if h != LaurentPoly.binomial_power(m, k, shift):
        raise InvalidMutationSpecError(f"h = {h} 不是 z^c(1+z^m)^k 的形式")
    return shift, m, k


@dataclass(frozen=True)
class MutationSpec:
    """
    变异数据 (φ, h)

    - phi: 仿射函数；法向量可以不是本原的，也可以为零（常数 φ）
    - h: z^c·(1+z^m)^k，k >= 1；φ 非常数时 h 的支撑必须落在 ker φ₀ 中

    示例:
    spec = MutationSpec.binomial(AffineFunctional((0, 2), -3), (1, 0))  # Tom 的第一步
    """
    phi: AffineFunctional
    h: LaurentPoly

    def __post_init__(self):
        shift, m, _ = _binomial_form(self.h)
        if not self.phi.is_constant:
            if dot(self.phi.normal, m) != 0 or dot(self.phi.normal, shift) != 0:
                raise InvalidMutationSpecError(
                    f"h = {self.h} 不在 ker φ₀ 中 (φ₀ = {self.phi.normal})"
                )

    @classmethod
    def binomial(cls, phi: AffineFunctional, m: LatticePoint, k: int = 1) -> "MutationSpec":
        return cls(phi, LaurentPoly.binomial_power(m, k))

    @property
    def direction(self) -> LatticePoint:
        return _binomial_form(self.h)[1]

    @property
    def power(self) -> int:
        return _binomial_form(self.h)[2]

    @property
    def shift(self) -> LatticePoint:
        return _binomial_form(self.h)[0]

    def inverse(self) -> "MutationSpec":
        return MutationSpec(-self.phi, self.h)

    def to_json(self) -> dict:
        return {"phi": self.phi.to_dict(), "h": self.h.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "MutationSpec":
        return cls(AffineFunctional.from_dict(data["phi"]), LaurentPoly.from_json(data["h"]))

    def __str__(self) -> str:
        n, c = self.phi.normal, self.phi.constant
        return f"φ=<({n[0]},{n[1]}),·>{c:+d}, h={self.h}"


def is_mutable(f: LaurentPoly, spec: MutationSpec) -> bool:
    """所有负层切片 f_k 都能被 h^{-k} 整除"""
    if f.is_zero:
        return True
    for s in slices(f, spec.phi):
        if s.level < 0 and exact_divide(s.poly, spec.h ** (-s.level)) is None:
            return False
    return True


def mutate(f: LaurentPoly, spec: MutationSpec) -> LaurentPoly:
    """
    mut_(φ,h)(f) = Σ_k h^k f_k

    错误:
    NotMutableError，带出问题的层 k
    """
    if f.is_zero:
        return LaurentPoly.zero()
    result = LaurentPoly.zero()
    for s in slices(f, spec.phi):
        if s.level >= 0:
            result = result + s.poly * spec.h ** s.level
            continue
        q = exact_divide(s.poly, spec.h ** (-s.level))
        if q is None:
            raise NotMutableError(s.level, f"f_k = {s.poly}")
        result = result + q
    return result


# ---- 多边形层面的变异 ----

def _level_segment(poly: LatticePolygon, spec: MutationSpec, level: int) -> Tuple[LatticePoint, LatticePoint]:
    """顶点层上的切片（一个顶点或一条 ker 方向的边），按 m 方向排序"""
    m = spec.direction
    pts = [v for v in poly.vertices if spec.phi(v) == level]
    pts.sort(key=lambda p: dot(p, m))
    return pts[0], pts[-1]


def _image_segment(lo: LatticePoint, hi: LatticePoint, level: int, spec: MutationSpec) -> Tuple[LatticePoint, LatticePoint]:
    shift, m, k = _binomial_form(spec.h)
    new_lo = add(lo, scale(level, shift))
    new_hi = add(hi, scale(level, add(shift, scale(k, m))))
    if dot(sub(new_hi, new_lo), m) < 0:
        raise NotMutableError(level, "切片的牛顿线段比 h^{-k} 短")
    return new_lo, new_hi


def _check_constant(poly: LatticePolygon, spec: MutationSpec) -> None:
    if spec.phi.is_constant and spec.phi.constant != 0 and poly.dim == 2:
        raise InvalidMutationSpecError("常数 φ 只作用在点和线段上")


def mutate_polytope(poly: LatticePolygon, spec: MutationSpec) -> LatticePolygon:
    """
    牛顿多边形的变异：对每个顶点层取切片 [lo, hi]，像为 [lo + k·c, hi + k·(c + K·m)]，再取凸包
    """
    _check_constant(poly, spec)
    images: List[LatticePoint] = []
    for level in sorted({spec.phi(v) for v in poly.vertices}):
        lo, hi = _level_segment(poly, spec, level)
        images.extend(_image_segment(lo, hi, level, spec))
    return convex_hull(images)


def mutate_vertex(v: LatticePoint, poly: LatticePolygon, spec: MutationSpec) -> LatticePolygon:
    """
    顶点的像

    - 所在层的切片只有 v 本身: 像为 v + k·Newt(h)（k = 0 时是点，k > 0 时是线段）
    - v 是 ker 方向一条边的端点: 像为对应端点的像（一个点）
    """
    if v not in poly.vertices:
        raise InvalidMutationSpecError(f"{v} 不是 {poly} 的顶点")
    _check_constant(poly, spec)
    level = spec.phi(v)
    if level == 0:
        return convex_hull([v])
    lo, hi = _level_segment(poly, spec, level)
    new_lo, new_hi = _image_segment(lo, hi, level, spec)
    if lo == hi:
        return convex_hull([new_lo, new_hi])
    return convex_hull([new_lo if v == lo else new_hi])


def mutate_edge(edge_index: int, poly: LatticePolygon, spec: MutationSpec) -> LatticePolygon:
    """
    边的像（一条边，或退化为一个顶点）

    ker 方向的边按切片处理；其余的边上每点都是所在切片的同一侧端点，
    像是两端点像的连线。
    """
    _check_constant(poly, spec)
    edge = poly.edges[edge_index]
    shift, m, k = _binomial_form(spec.h)
    k1, k2 = spec.phi(edge.start), spec.phi(edge.end)
    if k1 == k2:
        lo, hi = sorted((edge.start, edge.end), key=lambda p: dot(p, m))
        return convex_hull(_image_segment(lo, hi, k1, spec))
    low_side = dot(m, edge.normal) > 0
    ends = []
    for p, level in ((edge.start, k1), (edge.end, k2)):
        step = shift if low_side else add(shift, scale(k, m))
        ends.append(add(p, scale(level, step)))
    return convex_hull(ends)


# ---- 证书 ----

@dataclass(frozen=True)
class CertificateStep:
    """
    证书中的一步：先做变异（spec 为 None 时跳过），再做坐标变换 transform
    """
    spec: Optional[MutationSpec] = None
    transform: UnimodularAffineMap = field(default_factory=UnimodularAffineMap.identity)
    label: str = ""

    def apply(self, f: LaurentPoly) -> LaurentPoly:
        g = mutate(f, self.spec) if self.spec is not None else f
        return g.substitute(self.transform)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "spec": self.spec.to_json() if self.spec is not None else None,
            "transform": {
                "matrix": [list(row) for row in self.transform.matrix],
                "translation": list(self.transform.translation),
            },
        }


@dataclass
class MutationCertificate:
    """
    把 source 变到单位单项式 z^c 的变异序列

    polys[0] 是 source，polys[i+1] 是第 i 步之后的多项式
    """
    source: LaurentPoly
    steps: List[CertificateStep] = field(default_factory=list)
    polys: List[LaurentPoly] = field(default_factory=list)

    def __post_init__(self):
        if not self.polys:
            self.polys = [self.source]

    def push(self, step: CertificateStep) -> LaurentPoly:
        g = step.apply(self.polys[-1])
        self.steps.append(step)
        self.polys.append(g)
        return g

    @property
    def target(self) -> LaurentPoly:
        return self.polys[-1]

    @property
    def mutation_count(self) -> int:
        return sum(1 for s in self.steps if s.spec is not None)

    def replay(self, f: Optional[LaurentPoly] = None) -> bool:
        """
        从 f（默认 source）重新执行每一步，核对中间结果并要求终点是单位单项式
        """
        g = self.source if f is None else f
        if f is not None and f != self.source:
            return False
        for i, step in enumerate(self.steps):
            try:
                g = step.apply(g)
            except NotMutableError as exc:
                logger.debug("replay 第 %d 步失败: %s", i, exc)
                return False
            if g != self.polys[i + 1]:
                return False
        return g.is_unit_monomial

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "steps": [s.to_json() for s in self.steps],
            "polys": [p.to_json() for p in self.polys],
        }
