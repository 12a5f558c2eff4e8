"""
格点、格多边形与整仿射变换
多边形按逆时针顶点序存储，点和线段作为 0 维、1 维的多边形处理
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, List, Optional, Tuple

from zmlp.errors import NotTriangularError, ZmlpError

LatticePoint = Tuple[int, int]
Matrix2 = Tuple[Tuple[int, int], Tuple[int, int]]


def add(p: LatticePoint, q: LatticePoint) -> LatticePoint:
    return (p[0] + q[0], p[1] + q[1])


def sub(p: LatticePoint, q: LatticePoint) -> LatticePoint:
    return (p[0] - q[0], p[1] - q[1])


def scale(k: int, p: LatticePoint) -> LatticePoint:
    return (k * p[0], k * p[1])


def dot(p: LatticePoint, q: LatticePoint) -> int:
    return p[0] * q[0] + p[1] * q[1]


def det2(u: LatticePoint, v: LatticePoint) -> int:
    return u[0] * v[1] - u[1] * v[0]


def primitive(v: LatticePoint) -> Tuple[LatticePoint, int]:
    """
    返回 (v / g, g)，其中 g 为坐标的最大公约数（即格长度）

    注意: 零向量没有本原方向，会抛出 ZmlpError
    """
    g = gcd(v[0], v[1])
    if g == 0:
        raise ZmlpError("零向量没有本原方向")
    return (v[0] // g, v[1] // g), g


def ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """扩展欧几里得: 返回 (g, s, t)，满足 s*a + t*b = g >= 0"""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class AffineFunctional:
    """
    整仿射函数 φ(m) = <normal, m> + constant

    normal 可以不是本原的: (W·φ, h) 与 (φ, h^W) 给出同一个变异
    """
    normal: LatticePoint
    constant: int = 0

    def __call__(self, p: LatticePoint) -> int:
        return dot(self.normal, p) + self.constant

    def __neg__(self) -> "AffineFunctional":
        return AffineFunctional((-self.normal[0], -self.normal[1]), -self.constant)

    @property
    def is_constant(self) -> bool:
        return self.normal == (0, 0)

    def to_dict(self) -> dict:
        return {"normal": list(self.normal), "constant": self.constant}

    @classmethod
    def from_dict(cls, data: dict) -> "AffineFunctional":
        return cls(tuple(int(v) for v in data["normal"]), int(data.get("constant", 0)))


@dataclass(frozen=True)
class UnimodularAffineMap:
    """GL₂(ℤ)⋉ℤ² 中的元素 p ↦ matrix·p + translation"""
    matrix: Matrix2
    translation: LatticePoint = (0, 0)

    def __post_init__(self):
        if abs(self.det) != 1:
            raise ZmlpError(f"矩阵 {self.matrix} 的行列式为 {self.det}，不是幺模的")

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    @classmethod
    def identity(cls) -> "UnimodularAffineMap":
        return cls(((1, 0), (0, 1)))

    @classmethod
    def translate(cls, t: LatticePoint) -> "UnimodularAffineMap":
        return cls(((1, 0), (0, 1)), t)

    @classmethod
    def swap(cls) -> "UnimodularAffineMap":
        return cls(((0, 1), (1, 0)))

    def apply_linear(self, v: LatticePoint) -> LatticePoint:
        (a, b), (c, d) = self.matrix
        return (a * v[0] + b * v[1], c * v[0] + d * v[1])

    def apply(self, p: LatticePoint) -> LatticePoint:
        return add(self.apply_linear(p), self.translation)

    def compose(self, other: "UnimodularAffineMap") -> "UnimodularAffineMap":
        """返回 self∘other（先作用 other）"""
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = other.matrix
        matrix = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
        return UnimodularAffineMap(matrix, self.apply(other.translation))

    def inverse(self) -> "UnimodularAffineMap":
        (a, b), (c, d) = self.matrix
        det = self.det
        inv = ((det * d, -det * b), (-det * c, det * a))
        linear = UnimodularAffineMap(inv)
        t = linear.apply_linear(self.translation)
        return UnimodularAffineMap(inv, (-t[0], -t[1]))

    def apply_polygon(self, poly: "LatticePolygon") -> "LatticePolygon":
        return convex_hull([self.apply(v) for v in poly.vertices])


@dataclass(frozen=True)
class Edge:
    """
    多边形的一条边（逆时针方向）

    - tangent: 本原切向量 m_e
    - normal: 本原内法向量 n_e
    - length: 格长度 ℓ(e)
    """
    index: int
    start: LatticePoint
    end: LatticePoint
    tangent: LatticePoint
    normal: LatticePoint
    length: int

    def level(self, p: LatticePoint) -> int:
        """p 到这条边的格距离（边上为 0，多边形内部为正）"""
        return dot(self.normal, p) - dot(self.normal, self.start)


@dataclass(frozen=True)
class LatticePolygon:
    """
    格多边形，顶点逆时针排列，从字典序最小的顶点开始

    dim 为 0 时是一个点，为 1 时是一条线段（两条方向相反的“边”）
    """
    vertices: Tuple[LatticePoint, ...]

    @property
    def dim(self) -> int:
        return min(len(self.vertices) - 1, 2)

    @cached_property
    def edges(self) -> Tuple[Edge, ...]:
        if self.dim == 0:
            return ()
        verts = self.vertices
        n = len(verts)
        out = []
        for i in range(n):
            start, end = verts[i], verts[(i + 1) % n]
            tangent, length = primitive(sub(end, start))
            normal = (-tangent[1], tangent[0])
            out.append(Edge(i, start, end, tangent, normal, length))
        return tuple(out)

    def contains(self, p: LatticePoint) -> bool:
        if self.dim == 0:
            return p == self.vertices[0]
        if self.dim == 1:
            v, w = self.vertices
            d = sub(w, v)
            q = sub(p, v)
            return det2(d, q) == 0 and 0 <= dot(d, q) <= dot(d, d)
        return all(e.level(p) >= 0 for e in self.edges)

    def edge_with_normal(self, normal: LatticePoint) -> Optional[Edge]:
        for e in self.edges:
            if e.normal == normal:
                return e
        return None

    def __str__(self) -> str:
        return "Conv{" + ",".join(f"({x},{y})" for x, y in self.vertices) + "}"


Segment = LatticePolygon
Point = LatticePolygon


def _cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> int:
    return det2(sub(a, o), sub(b, o))


def convex_hull(points: Iterable[LatticePoint]) -> LatticePolygon:
    """
    点集的凸包，只保留极点

    返回:
    LatticePolygon，维数 0/1/2 由顶点个数体现
    """
    pts = sorted(set((int(p[0]), int(p[1])) for p in points))
    if not pts:
        raise ZmlpError("凸包需要非空点集")
    if len(pts) == 1:
        return LatticePolygon((pts[0],))
    lower: List[LatticePoint] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[LatticePoint] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return LatticePolygon(tuple(hull))


def triangle(a: int, b: int) -> LatticePolygon:
    """标准位置 P(a,b) = Conv{(0,0),(b,0),(0,a)}：竖边长 a，横边长 b"""
    return convex_hull([(0, 0), (b, 0), (0, a)])


def lattice_points(poly: LatticePolygon) -> List[LatticePoint]:
    """多边形中的全部格点（按字典序）"""
    if poly.dim == 0:
        return [poly.vertices[0]]
    if poly.dim == 1:
        v, w = poly.vertices
        m, length = primitive(sub(w, v))
        return sorted(add(v, scale(t, m)) for t in range(length + 1))
    xs = [v[0] for v in poly.vertices]
    ys = [v[1] for v in poly.vertices]
    edges = poly.edges
    return [
        (x, y)
        for x in range(min(xs), max(xs) + 1)
        for y in range(min(ys), max(ys) + 1)
        if all(e.level((x, y)) >= 0 for e in edges)
    ]


def lattice_point_count(poly: LatticePolygon) -> int:
    return len(lattice_points(poly))


def boundary_closes(poly: LatticePolygon) -> bool:
    """闭合条件 Σ ℓ(e)·m_e = 0"""
    total = (0, 0)
    for e in poly.edges:
        total = add(total, scale(e.length, e.tangent))
    return total == (0, 0)


def classify_rectangular(poly: LatticePolygon) -> Optional[Tuple[int, int, UnimodularAffineMap]]:
    """
    判断多边形是否幺模等价于直角三角形

    参数:
    - poly: 二维格多边形

    返回:
    (a, b, map)，a <= b，map 把 poly 送到 Conv{(0,0),(a,0),(0,b)}；不存在时返回 None

    示例:
    classify_rectangular(convex_hull([(0,0),(3,0),(0,2)]))  # (2, 3, map)
    """
    if poly.dim != 2 or len(poly.vertices) != 3:
        return None
    verts = poly.vertices
    for i, v in enumerate(verts):
        u, lu = primitive(sub(verts[(i + 1) % 3], v))
        w, lw = primitive(sub(verts[i - 1], v))
        if abs(det2(u, w)) != 1:
            continue
        if lu > lw:
            u, w, lu, lw = w, u, lw, lu
        det = det2(u, w)
        # 列为 u, w 的矩阵之逆
        matrix = ((det * w[1], -det * w[0]), (-det * u[1], det * u[0]))
        linear = UnimodularAffineMap(matrix)
        t = linear.apply_linear(v)
        return lu, lw, UnimodularAffineMap(matrix, (-t[0], -t[1]))
    return None


def standard_triangle(poly: LatticePolygon) -> Tuple[int, int, UnimodularAffineMap]:
    """
    把直角三角形送到标准位置 P(a,b) = Conv{(0,0),(b,0),(0,a)}

    已经形如 Conv{(0,0),(p,0),(0,q)} 的三角形保持不动（a=q, b=p）。
    否则先用 classify_rectangular 送到 Conv{(0,0),(a,0),(0,b)}，再交换坐标。
    """
    verts = set(poly.vertices)
    if poly.dim == 2 and len(verts) == 3 and (0, 0) in verts:
        others = verts - {(0, 0)}
        on_x = [p for p in others if p[1] == 0 and p[0] > 0]
        on_y = [p for p in others if p[0] == 0 and p[1] > 0]
        if len(on_x) == 1 and len(on_y) == 1:
            return on_y[0][1], on_x[0][0], UnimodularAffineMap.identity()
    found = classify_rectangular(poly)
    if found is None:
        raise NotTriangularError(f"{poly} 不是直角三角形")
    a, b, to_std = found
    return a, b, UnimodularAffineMap.swap().compose(to_std)


def _to_x_axis(u: LatticePoint) -> UnimodularAffineMap:
    """行列式为 1 且把本原向量 u 送到 (1,0) 的线性映射"""
    _, s, t = ext_gcd(u[0], u[1])
    return UnimodularAffineMap(((s, t), (-u[1], u[0])))


_REFLECT = UnimodularAffineMap(((1, 0), (0, -1)))


def framings(poly: LatticePolygon) -> List[Tuple[Tuple[LatticePoint, ...], UnimodularAffineMap]]:
    """
    多边形的全部 Hermite 约化摆放

    对每个顶点和每个走向：出边送到 (1,0)，多边形落在上半平面，
    另一条边方向 (p,q) 经剪切约化到 0 <= p < q，顶点移到原点。

    返回:
    [(按走向排列的顶点序列, 对应的幺模映射)]
    """
    verts = poly.vertices
    if poly.dim == 0:
        v = verts[0]
        return [(((0, 0),), UnimodularAffineMap.translate((-v[0], -v[1])))]
    out = []
    if poly.dim == 1:
        for v, w in ((verts[0], verts[1]), (verts[1], verts[0])):
            u, _ = primitive(sub(w, v))
            linear = _to_x_axis(u)
            t = linear.apply_linear(v)
            m = UnimodularAffineMap(linear.matrix, (-t[0], -t[1]))
            out.append(((m.apply(v), m.apply(w)), m))
        return out
    n = len(verts)
    for orient in (1, -1):
        seq = list(verts) if orient == 1 else list(reversed(verts))
        for i in range(n):
            v, nxt, prv = seq[i], seq[(i + 1) % n], seq[i - 1]
            u, _ = primitive(sub(nxt, v))
            linear = _to_x_axis(u)
            if orient == -1:
                linear = _REFLECT.compose(linear)
            w = linear.apply_linear(primitive(sub(prv, v))[0])
            s = -(w[0] // w[1])
            linear = UnimodularAffineMap(((1, s), (0, 1))).compose(linear)
            t = linear.apply_linear(v)
            m = UnimodularAffineMap(linear.matrix, (-t[0], -t[1]))
            out.append((tuple(m.apply(seq[(i + j) % n]) for j in range(n)), m))
    return out


def polygon_key(poly: LatticePolygon) -> Tuple[LatticePoint, ...]:
    """GL₂(ℤ)⋉ℤ² 轨道的不变量：字典序最小的约化摆放"""
    return min(seq for seq, _ in framings(poly))


def canonical_maps(poly: LatticePolygon) -> List[UnimodularAffineMap]:
    """所有把 poly 送到规范代表元的映射"""
    options = framings(poly)
    best = min(seq for seq, _ in options)
    return [m for seq, m in options if seq == best]


def canonical_form(poly: LatticePolygon) -> LatticePolygon:
    """
    GL₂(ℤ)⋉ℤ² 轨道的唯一代表元

    点 → (0,0)，线段 → (0,0)-(ℓ,0)，多边形 → 字典序最小的约化摆放
    """
    return convex_hull(polygon_key(poly))


def box_size(poly: LatticePolygon) -> int:
    """各约化摆放中 max(宽, 高) 的最小值"""
    best = None
    for seq, _ in framings(poly):
        xs = [p[0] for p in seq]
        ys = [p[1] for p in seq]
        size = max(max(xs) - min(xs), max(ys) - min(ys))
        best = size if best is None else min(best, size)
    return best


def polygon_from_json(data: dict) -> LatticePolygon:
    return convex_hull([tuple(int(c) for c in v) for v in data["vertices"]])


def polygon_to_json(poly: LatticePolygon) -> dict:
    return {"vertices": [list(v) for v in poly.vertices]}
