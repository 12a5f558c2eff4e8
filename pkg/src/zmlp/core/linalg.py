"""
有理数上的精确线性代数（基于 sympy DomainMatrix）
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import sympy as sp
from sympy import QQ, ZZ
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.matrices import DomainMatrix

from zmlp.errors import ZmlpError

Row = Sequence[Union[int, Fraction]]
Vector3 = Tuple[int, int, int]


def _to_fraction(value) -> Fraction:
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _qq(value) -> object:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def rref(rows: List[Row], ncols: int) -> Tuple[List[List[Fraction]], Tuple[int, ...]]:
    """
    行最简形

    参数:
    - rows: 系数矩阵的行
    - ncols: 列数（rows 为空时也需要）

    返回:
    (非零行列表, 主元列)
    """
    if not rows:
        return [], ()
    matrix = DomainMatrix([[_qq(v) for v in row] for row in rows], (len(rows), ncols), QQ)
    reduced, pivots = matrix.rref()
    dense = reduced.to_Matrix()
    out = [[_to_fraction(dense[i, j]) for j in range(ncols)] for i in range(len(pivots))]
    return out, tuple(pivots)


def nullspace(rows: List[Row], ncols: int) -> List[List[Fraction]]:
    """齐次方程组 rows·x = 0 的解空间基"""
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, col in zip(reduced, pivots):
            vec[col] = -row[free]
        basis.append(vec)
    return basis


def solve_unique(rows: List[Row], rhs: Sequence[Union[int, Fraction]], ncols: int) -> Optional[List[Fraction]]:
    """
    求 rows·x = rhs 的唯一解；无解或解不唯一时返回 None
    """
    augmented = [list(row) + [value] for row, value in zip(rows, rhs)]
    reduced, pivots = rref(augmented, ncols + 1)
    if ncols in pivots:
        return None
    if len(pivots) != ncols:
        return None
    solution = [Fraction(0)] * ncols
    for row, col in zip(reduced, pivots):
        solution[col] = row[ncols]
    return solution


def is_zero_on(functional: Row, basis: List[List[Fraction]]) -> bool:
    """线性函数在子空间上是否恒为零"""
    for vec in basis:
        if sum(Fraction(f) * v for f, v in zip(functional, vec) if f) != 0:
            return False
    return True


def det3(u: Vector3, v: Vector3, w: Vector3) -> int:
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )


def cross3(u: Vector3, v: Vector3) -> Vector3:
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def smith_diagonal(matrix: List[List[int]]) -> List[int]:
    """整数矩阵 Smith 标准形的对角元（取绝对值）"""
    snf = smith_normal_form(sp.Matrix(matrix), domain=ZZ)
    size = min(snf.rows, snf.cols)
    return [abs(int(snf[i, i])) for i in range(size)]


def inverse_rows(matrix: List[List[int]]) -> List[List[Fraction]]:
    """可逆整数方阵的有理逆矩阵"""
    m = sp.Matrix(matrix)
    if m.det() == 0:
        raise ZmlpError(f"矩阵 {matrix} 不可逆")
    inv = m.inv()
    return [[_to_fraction(inv[i, j]) for j in range(inv.cols)] for i in range(inv.rows)]
