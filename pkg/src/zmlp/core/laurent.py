"""
整系数稀疏 Laurent 多项式（至多两个变量）
提供环运算、按仿射函数分层切片、(1+z^m) 重数与精确除法
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

import sympy as sp

from zmlp.core.lattice import (
    AffineFunctional,
    LatticePoint,
    LatticePolygon,
    UnimodularAffineMap,
    add,
    canonical_maps,
    convex_hull,
    det2,
    dot,
    polygon_key,
    primitive,
    scale,
    sub,
)
from zmlp.errors import EmptyPolynomialError, NotCollinearError, ZmlpError


class Infinity(Enum):
    """可除性元组中的 ∞（切片为零）"""
    INF = "inf"

    def __str__(self) -> str:
        return "∞"


INF = Infinity.INF
DivValue = Union[int, Infinity]

_X, _Y = sp.symbols("x y")


class LaurentPoly:
    """
    Laurent 多项式 f = Σ c_m z^m，系数为整数，不存储零系数

    参数:
    - terms: {指数 (i, j): 系数}

    示例:
    tom = LaurentPoly.parse("(1+x)^3 + 2*y*(1+x) + y^2")
    tom.newton_polygon()  # Conv{(0,0),(3,0),(0,2)}
    """
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[LatticePoint, int]] = None):
        clean: Dict[LatticePoint, int] = {}
        if terms:
            for exp, c in terms.items():
                c = int(c)
                if c != 0:
                    clean[(int(exp[0]), int(exp[1]))] = c
        self._terms = clean
        self._hash: Optional[int] = None

    # ---- 构造 ----
    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, exp: LatticePoint, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def binomial_power(cls, m: LatticePoint, k: int, shift: LatticePoint = (0, 0)) -> "LaurentPoly":
        """z^shift·(1+z^m)^k"""
        if k < 0:
            raise ZmlpError(f"幂次必须非负: {k}")
        return cls({add(shift, scale(i, m)): comb(k, i) for i in range(k + 1)})

    @classmethod
    def from_rows(cls, rows: List[List[int]], y0: int = 0) -> "LaurentPoly":
        """按行（自下而上，每行从 x=0 开始）给出的系数表"""
        terms = {}
        for j, row in enumerate(rows):
            for i, c in enumerate(row):
                terms[(i, y0 + j)] = c
        return cls(terms)

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """
        解析 x, y 的表达式，例如 "(1+x)^3+2*y*(1+x)+y^2" 或 "y^2*(1+y^-1)^2+x*y^2"
        """
        expr = sp.expand(sp.sympify(text, locals={"x": _X, "y": _Y}))
        terms: Dict[LatticePoint, int] = {}
        for mono, c in expr.as_coefficients_dict().items():
            if not c.is_integer:
                raise ZmlpError(f"系数必须是整数: {c}")
            if mono == 1:
                exp = (0, 0)
            else:
                powers = mono.as_powers_dict()
                unknown = set(powers) - {_X, _Y}
                if unknown:
                    raise ZmlpError(f"只支持变量 x, y: {unknown}")
                exp = (int(powers.get(_X, 0)), int(powers.get(_Y, 0)))
            terms[exp] = terms.get(exp, 0) + int(c)
        return cls(terms)

    # ---- 基本访问 ----
    @property
    def terms(self) -> Dict[LatticePoint, int]:
        return dict(self._terms)

    def items(self) -> List[Tuple[LatticePoint, int]]:
        return sorted(self._terms.items())

    @property
    def support(self) -> List[LatticePoint]:
        return sorted(self._terms)

    def coeff(self, exp: LatticePoint) -> int:
        return self._terms.get(exp, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[LatticePoint]:
        return iter(self.support)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    @property
    def is_unit_monomial(self) -> bool:
        """形如 z^c 的单项式（系数为 1）"""
        return self.is_monomial and next(iter(self._terms.values())) == 1

    @property
    def is_constant(self) -> bool:
        return all(exp == (0, 0) for exp in self._terms)

    def newton_polygon(self) -> LatticePolygon:
        if self.is_zero:
            raise EmptyPolynomialError("newton_polygon")
        return convex_hull(self._terms)

    # ---- 环运算 ----
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self.items()))
        return self._hash

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({(0, 0): c})

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            out[exp] = out.get(exp, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({exp: -c for exp, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({exp: c * other for exp, c in self._terms.items()})
        out: Dict[LatticePoint, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = (e1[0] + e2[0], e1[1] + e2[1])
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ZmlpError("Laurent 多项式只支持非负整数次幂")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def monomial_mul(self, m: LatticePoint) -> "LaurentPoly":
        return LaurentPoly({add(exp, m): c for exp, c in self._terms.items()})

    def substitute(self, transform: UnimodularAffineMap) -> "LaurentPoly":
        """指数经幺模仿射变换后的多项式"""
        return LaurentPoly({transform.apply(exp): c for exp, c in self._terms.items()})

    def swap(self) -> "LaurentPoly":
        """τ: f(x, y) ↦ f(y, x)"""
        return LaurentPoly({(j, i): c for (i, j), c in self._terms.items()})

    # ---- 输出 ----
    def to_sympy(self):
        return sum((c * _X ** i * _Y ** j for (i, j), c in self.items()), sp.Integer(0))

    def to_rows(self) -> List[List[int]]:
        """按行输出系数（自下而上，每行从 x=0 起），指数需非负"""
        if self.is_zero:
            return []
        if any(i < 0 or j < 0 for i, j in self._terms):
            raise ZmlpError("to_rows 需要非负指数")
        top = max(j for _, j in self._terms)
        rows = []
        for j in range(top + 1):
            xs = [i for i, jj in self._terms if jj == j]
            width = max(xs) + 1 if xs else 0
            rows.append([self.coeff((i, j)) for i in range(width)])
        return rows

    def to_json(self) -> dict:
        return {"terms": [{"exp": list(exp), "coeff": c} for exp, c in self.items()]}

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPoly":
        terms = {}
        for term in data["terms"]:
            exp = list(term["exp"])
            if len(exp) == 1:
                exp.append(0)
            terms[tuple(exp)] = term["coeff"]
        return cls(terms)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return str(self.to_sympy())

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


@dataclass(frozen=True)
class Slice:
    """φ = level 上的切片 f_k"""
    level: int
    poly: LaurentPoly


def slices(f: LaurentPoly, phi: AffineFunctional) -> List[Slice]:
    """
    按 φ 的取值把 f 分成切片 f = Σ_k f_k（只返回非空的层）

    参数:
    - f: 非零多项式
    - phi: 仿射函数

    返回:
    按 level 升序的 Slice 列表；缺失的层用 slice_at 查询得到零多项式
    """
    if f.is_zero:
        raise EmptyPolynomialError("slices")
    buckets: Dict[int, Dict[LatticePoint, int]] = {}
    for exp, c in f.items():
        buckets.setdefault(phi(exp), {})[exp] = c
    return [Slice(k, LaurentPoly(buckets[k])) for k in sorted(buckets)]


def slice_at(f: LaurentPoly, phi: AffineFunctional, level: int) -> LaurentPoly:
    return LaurentPoly({exp: c for exp, c in f.items() if phi(exp) == level})


def binomial_multiplicity(g: LaurentPoly, m: LatticePoint) -> DivValue:
    """
    (1+z^m) 整除 g 的最大次数；g = 0 时为 ∞

    做法: 令 t = z^m 化为一元多项式，用综合除法数 t = -1 的根重数。
    结果与 m 的符号无关。
    """
    if g.is_zero:
        return INF
    m, _ = primitive(m)
    exps = g.support
    p0 = exps[0]
    norm = dot(m, m)
    positions: Dict[int, int] = {}
    for exp in exps:
        d = sub(exp, p0)
        if det2(d, m) != 0:
            raise NotCollinearError(f"支撑 {exps} 不在方向 {m} 的直线上")
        positions[dot(d, m) // norm] = g.coeff(exp)
    low = min(positions)
    coeffs = [0] * (max(positions) - low + 1)
    for s, c in positions.items():
        coeffs[s - low] = c
    count = 0
    while len(coeffs) > 1:
        if sum(c if i % 2 == 0 else -c for i, c in enumerate(coeffs)) != 0:
            break
        # 除以 (t+1)
        n = len(coeffs) - 1
        q = [0] * n
        q[n - 1] = coeffs[n]
        for i in range(n - 1, 0, -1):
            q[i - 1] = coeffs[i] - q[i]
        coeffs = q
        count += 1
    return count


def exact_divide(f: LaurentPoly, h: LaurentPoly) -> Optional[LaurentPoly]:
    """
    在 ℤ 上求 q 使 q·h = f，不存在时返回 None

    字典序首项除法；商的指数必须落在由牛顿多边形决定的坐标框内，否则判定不整除。
    """
    if h.is_zero:
        raise ZmlpError("除数为零")
    if f.is_zero:
        return LaurentPoly.zero()
    fx = [e[0] for e in f.support]
    fy = [e[1] for e in f.support]
    hx = [e[0] for e in h.support]
    hy = [e[1] for e in h.support]
    box = (min(fx) - min(hx), max(fx) - max(hx), min(fy) - min(hy), max(fy) - max(hy))
    if box[0] > box[1] or box[2] > box[3]:
        return None
    lead_h = max(h.support)
    c_h = h.coeff(lead_h)
    h_items = h.items()
    rest = f.terms
    quotient: Dict[LatticePoint, int] = {}
    while rest:
        lead = max(rest)
        e = sub(lead, lead_h)
        c = rest[lead]
        if c % c_h != 0:
            return None
        if not (box[0] <= e[0] <= box[1] and box[2] <= e[1] <= box[3]):
            return None
        t = c // c_h
        quotient[e] = t
        for p, hc in h_items:
            key = add(p, e)
            value = rest.get(key, 0) - t * hc
            if value:
                rest[key] = value
            else:
                rest.pop(key, None)
    return LaurentPoly(quotient)


def canonical_key(f: LaurentPoly) -> tuple:
    """
    多项式在 GL₂(ℤ)⋉ℤ² 作用下的不变键（牛顿多边形键 + 最小的项序列）
    """
    poly = f.newton_polygon()
    best = None
    for transform in canonical_maps(poly):
        key = tuple(sorted((transform.apply(exp), c) for exp, c in f.items()))
        if best is None or key < best:
            best = key
    return polygon_key(poly), best


if __name__ == "__main__":
    tom = LaurentPoly.parse("(1+x)^3 + 2*y*(1+x) + y^2")
    print("Tom:", tom)
    for s in slices(tom, AffineFunctional((0, 1))):
        print(f"  level {s.level}: {s.poly}, 重数 {binomial_multiplicity(s.poly, (1, 0))}")
