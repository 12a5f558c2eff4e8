"""
三维有理多面体锥与扇

多边形上的锥 σ = C(P×{1})，对偶锥 σ∨，以 ρ₀ 为中心的中心剖分，星形剖分（环面爆破）
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from zmlp.core.lattice import LatticePolygon, lattice_points, triangle
from zmlp.core.linalg import Vector3, cross3, det3
from zmlp.errors import ConeError
from zmlp.toric.singularity import QuotientSingularity, singularity_type

logger = logging.getLogger(__name__)

RHO0: Vector3 = (0, 0, 1)


def dot3(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def primitive3(v: Sequence[int]) -> Vector3:
    g = reduce(gcd, (abs(x) for x in v))
    if g == 0:
        raise ConeError("零向量不能作为射线")
    return tuple(x // g for x in v)


def parse_vector3(text: str) -> Vector3:
    parts = [p for p in text.replace("(", " ").replace(")", " ").replace(",", " ").split()]
    if len(parts) != 3:
        raise ConeError(f"需要三个整数: {text!r}")
    return tuple(int(p) for p in parts)


def parse_cone(text: str) -> "Cone3":
    """
    "v1;v2;v3" 格式，例如 "1,0,0;0,1,0;1,-2,3"
    """
    return Cone3([parse_vector3(chunk) for chunk in text.split(";") if chunk.strip()])


def _cyclic_order(rays: List[Vector3], facets: List[Vector3]) -> List[Vector3]:
    """尖锥的极射线按环序排列：相邻射线共面，det(g_i, g_{i+1}, Σg) > 0，从字典序最大的射线开始"""
    if len(rays) < 3:
        return sorted(rays, reverse=True)
    center = tuple(sum(r[i] for r in rays) for i in range(3))
    neighbours: Dict[Vector3, List[Vector3]] = {r: [] for r in rays}
    for n in facets:
        on = [r for r in rays if dot3(n, r) == 0]
        if len(on) == 2:
            u, v = on
            neighbours[u].append(v)
            neighbours[v].append(u)
    start = max(rays)
    nxt = [v for v in neighbours[start] if det3(start, v, center) > 0]
    if not nxt:
        raise ConeError(f"无法确定射线环序: {rays}")
    order = [start, nxt[0]]
    while len(order) < len(rays):
        cur, prev = order[-1], order[-2]
        step = [v for v in neighbours[cur] if v != prev]
        if not step or step[0] in order:
            raise ConeError(f"射线邻接关系不是一个环: {rays}")
        order.append(step[0])
    return order


@dataclass(frozen=True)
class Cone3:
    """
    ℝ³ 中由整向量生成的锥；生成元保存为本原向量
    """
    generators: Tuple[Vector3, ...]

    def __init__(self, generators: Sequence[Sequence[int]]):
        gens: List[Vector3] = []
        for g in generators:
            p = primitive3(g)
            if p not in gens:
                gens.append(p)
        object.__setattr__(self, "generators", tuple(gens))

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    @property
    def is_full_dimensional(self) -> bool:
        return any(det3(*t) != 0 for t in combinations(self.generators, 3))

    @property
    def is_simplicial(self) -> bool:
        return len(self.generators) == 3 and self.is_full_dimensional

    @property
    def det(self) -> int:
        if len(self.generators) != 3:
            raise ConeError(f"只有 3 个生成元的锥才有行列式: {self.generators}")
        return abs(det3(*self.generators))

    def facet_normals(self) -> List[Vector3]:
        """
        各个面的内法向（本原）

        错误:
        锥不是满维或不尖时抛出 ConeError
        """
        if not self.is_full_dimensional:
            raise ConeError(f"锥不是满维的: {self.generators}")
        normals: List[Vector3] = []
        for u, v in combinations(self.generators, 2):
            n = cross3(u, v)
            if n == (0, 0, 0):
                continue
            values = [dot3(n, g) for g in self.generators]
            if all(x >= 0 for x in values):
                cand = primitive3(n)
            elif all(x <= 0 for x in values):
                cand = primitive3(tuple(-x for x in n))
            else:
                continue
            if cand not in normals:
                normals.append(cand)
        total = tuple(sum(n[i] for n in normals) for i in range(3))
        if not normals or any(dot3(total, g) <= 0 for g in self.generators):
            raise ConeError(f"锥不是尖的: {self.generators}")
        return normals

    def rays(self) -> List[Vector3]:
        """极射线（按环序）"""
        normals = self.facet_normals()
        extremal = []
        for g in self.generators:
            on = [n for n in normals if dot3(n, g) == 0]
            if any(cross3(n1, n2) != (0, 0, 0) for n1, n2 in combinations(on, 2)):
                extremal.append(g)
        return _cyclic_order(extremal, normals)

    def contains(self, v: Sequence[int]) -> bool:
        return all(dot3(n, v) >= 0 for n in self.facet_normals())

    def interior_contains(self, v: Sequence[int]) -> bool:
        return all(dot3(n, v) > 0 for n in self.facet_normals())

    def __str__(self) -> str:
        return "⟨" + ", ".join(str(g) for g in self.generators) + "⟩"

    def to_json(self) -> dict:
        return {"generators": [list(g) for g in self.generators]}


def cone_over(poly: LatticePolygon) -> Cone3:
    """
    σ = C(P×{1})

    示例:
    cone_over(triangle(2, 3))  # ⟨(0,0,1), (3,0,1), (0,2,1)⟩
    """
    if poly.dim != 2:
        raise ConeError(f"需要二维多边形: {poly}")
    return Cone3([(v[0], v[1], 1) for v in poly.vertices])


def dual_cone(cone: Cone3) -> Cone3:
    """
    σ∨ 的射线就是 σ 各个面的内法向，按环序排列

    示例:
    dual_cone(cone_over(triangle(a, b)))  # ⟨(1,0,0), (0,1,0), (-a,-b,ab)⟩
    """
    return Cone3(Cone3(cone.facet_normals()).rays())


@dataclass
class Fan3:
    """
    极大锥的列表；构造时检查两两相交于公共面
    """
    cones: List[Cone3]

    def __post_init__(self):
        self.cones = list(self.cones)
        for c in self.cones:
            c.facet_normals()
        for c1, c2 in combinations(self.cones, 2):
            if not _meet_in_face(c1, c2):
                raise ConeError(f"{c1} 与 {c2} 不相交于公共面")

    def __len__(self) -> int:
        return len(self.cones)

    def __iter__(self):
        return iter(self.cones)

    def rays(self) -> List[Vector3]:
        out: List[Vector3] = []
        for c in self.cones:
            for g in c.generators:
                if g not in out:
                    out.append(g)
        return out

    def contains(self, v: Sequence[int]) -> bool:
        return any(c.contains(v) for c in self.cones)

    def determinants(self) -> List[int]:
        return [c.det for c in self.cones]

    def to_json(self) -> dict:
        return {"cones": [c.to_json() for c in self.cones]}


def _intersection_rays(c1: Cone3, c2: Cone3) -> List[Vector3]:
    normals = c1.facet_normals() + c2.facet_normals()
    out: List[Vector3] = []
    for n1, n2 in combinations(normals, 2):
        d = cross3(n1, n2)
        if d == (0, 0, 0):
            continue
        for cand in (d, tuple(-x for x in d)):
            if all(dot3(n, cand) >= 0 for n in normals):
                p = primitive3(cand)
                if p not in out:
                    out.append(p)
    return out


def _is_face(cone: Cone3, rays: List[Vector3], other: Cone3) -> bool:
    """包含 rays 的最小面的极射线都落在 other 中"""
    if not rays:
        return True
    normals = [n for n in cone.facet_normals() if all(dot3(n, r) == 0 for r in rays)]
    face = [g for g in cone.generators if all(dot3(n, g) == 0 for n in normals)]
    return all(other.contains(g) for g in face)


def _meet_in_face(c1: Cone3, c2: Cone3) -> bool:
    rays = _intersection_rays(c1, c2)
    return _is_face(c1, rays, c2) and _is_face(c2, rays, c1)


def central_subdivision(dual: Cone3, rho0: Vector3 = RHO0) -> Fan3:
    """
    以内部射线 ρ₀ 为中心剖分 σ∨：每个面一个极大锥 ⟨r_i, r_{i+1}, ρ₀⟩

    错误:
    ρ₀ 不在 σ∨ 内部时抛出 ConeError

    示例:
    [c.det for c in central_subdivision(dual_cone(cone_over(triangle(a, b))))]  # [1, a, b]
    """
    if not dual.interior_contains(rho0):
        raise ConeError(f"ρ₀ = {rho0} 不在 {dual} 的内部")
    rays = dual.rays()
    cones = [Cone3([rays[i], rays[(i + 1) % len(rays)], rho0]) for i in range(len(rays))]
    return Fan3(cones)


def _split_cone(cone: Cone3, ray: Vector3) -> List[Cone3]:
    if ray in cone.generators:
        return [cone]
    normals = cone.facet_normals()
    out = []
    for n in normals:
        if dot3(n, ray) == 0:
            continue
        face = [g for g in cone.generators if dot3(n, g) == 0]
        out.append(Cone3(face + [ray]))
    return out


def star_subdivision(fan: Fan3, ray: Sequence[int]) -> Fan3:
    """
    沿射线 ray 做星形剖分（环面爆破的组合数据）

    包含 ray 的每个锥 C 换成 ⟨F, ray⟩，F 取遍 C 中不含 ray 的面

    错误:
    ray 不在扇的支撑内时抛出 ConeError
    """
    ray = primitive3(ray)
    if not fan.contains(ray):
        raise ConeError(f"射线 {ray} 不在扇的支撑内")
    cones: List[Cone3] = []
    for c in fan.cones:
        if c.contains(ray):
            cones.extend(_split_cone(c, ray))
        else:
            cones.append(c)
    logger.debug("星形剖分 %s: %d -> %d 个锥", ray, len(fan), len(cones))
    return Fan3(cones)


def _triangulate(cone: Cone3) -> List[Tuple[Vector3, Vector3, Vector3]]:
    rays = cone.rays()
    return [(rays[0], rays[i], rays[i + 1]) for i in range(1, len(rays) - 1)]


def fan_volume(fan: Fan3, w: Sequence[int]) -> Fraction:
    """
    支撑在超平面 <w,·> = 1 上截面的规范化面积 Σ|det| / Π<w,v_i>

    w 必须在支撑上严格为正；星形剖分不改变这个量
    """
    total = Fraction(0)
    for cone in fan.cones:
        for t in _triangulate(cone):
            heights = [dot3(w, v) for v in t]
            if any(h <= 0 for h in heights):
                raise ConeError(f"w = {tuple(w)} 在 {cone} 上不是正的")
            total += Fraction(abs(det3(*t)), heights[0] * heights[1] * heights[2])
    return total


def quotient_cone(a: int, b: int) -> Cone3:
    """⟨(1,0,0), (0,1,0), (0,-b,a)⟩，类型 1/a(1,b,0)"""
    return Cone3([(1, 0, 0), (0, 1, 0), (0, -b, a)])


def step_a_blowup(a: int, b: int) -> Fan3:
    """
    quotient_cone(a,b) 沿 (1,0,0)+(0,-b,a) = (1,-b,a) 的星形剖分；
    其中含锥 ⟨(1,0,0), (0,1,0), (1,-b,a)⟩，类型 1/a(1,-1,b)
    """
    return star_subdivision(Fan3([quotient_cone(a, b)]), (1, -b, a))


def height_map(p: Sequence[int]) -> List[List[int]]:
    """
    n ↦ (n1, n2, <n,(p,1)>)，行列式为 1；p 为多边形内点时把 σ∨ 送到极对偶多边形上的锥
    """
    return [[1, 0, 0], [0, 1, 0], [p[0], p[1], 1]]


def apply3(matrix: List[List[int]], v: Sequence[int]) -> Vector3:
    return tuple(dot3(row, v) for row in matrix)


def polar_polygon_vertices(poly: LatticePolygon, interior: Optional[Tuple[int, int]] = None) -> List[Tuple[Fraction, Fraction]]:
    """
    σ∨ 的射线在 height_map 下的像除以高度，即以内点为原点的极对偶多边形的顶点
    """
    if interior is None:
        inner = [p for p in lattice_points(poly) if all(e.level(p) > 0 for e in poly.edges)]
        if not inner:
            raise ConeError(f"{poly} 没有内点")
        interior = inner[0]
    m = height_map(interior)
    out = []
    for r in dual_cone(cone_over(poly)).rays():
        x, y, h = apply3(m, r)
        out.append((Fraction(x, h), Fraction(y, h)))
    return out


@dataclass
class ToricDegeneration:
    """△(a,b) 的环面退化数据"""
    a: int
    b: int
    sigma: Cone3
    dual: Cone3
    subdivision: Fan3
    types: List[QuotientSingularity]

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "sigma": self.sigma.to_json(),
            "dual": self.dual.to_json(),
            "subdivision": self.subdivision.to_json(),
            "determinants": self.subdivision.determinants(),
            "types": [t.to_json() for t in self.types],
        }


def toric_degeneration(a: int, b: int) -> ToricDegeneration:
    """
    σ、σ∨、中心剖分以及各分量的奇点类型

    示例:
    deg = toric_degeneration(2, 3)
    deg.subdivision.determinants()  # [1, 2, 3]
    """
    sigma = cone_over(triangle(a, b))
    dual = dual_cone(sigma)
    fan = central_subdivision(dual)
    types = [singularity_type(c) for c in fan.cones]
    return ToricDegeneration(a, b, sigma, dual, fan, types)


if __name__ == "__main__":
    deg = toric_degeneration(2, 3)
    print("=" * 60)
    print(f"σ  = {deg.sigma}")
    print(f"σ∨ = {deg.dual}")
    for cone, t in zip(deg.subdivision.cones, deg.types):
        print(f"  {cone}: det {cone.det}, {t}")
    print("=" * 60)
