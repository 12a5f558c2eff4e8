"""
Tom / Jerry / Spike / Tyke 分类表
模板保存在 data/table1.json，箭头块按 |𝐛| = b 展开
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import List, Optional, Tuple

import sympy as sp

from zmlp.divisibility.partition import DualPair, make_partition, pair_degrees
from zmlp.mutation.triangular import tau_pair

_K = sp.Symbol("k")


class FamilyLabel(str, Enum):
    TOM = "Tom"
    JERRY = "Jerry"
    SPIKE = "Spike"
    TYKE = "Tyke"
    UNNAMED = "Unnamed"


@dataclass(frozen=True)
class FamilyRow:
    family: str
    label: FamilyLabel
    pair: DualPair


@lru_cache(maxsize=None)
def load_table1() -> dict:
    text = resources.files("zmlp").joinpath("data/table1.json").read_text(encoding="utf-8")
    return json.loads(text)


def _eval(expr, k: int) -> Optional[int]:
    """整数或 k 的表达式；结果不是整数时返回 None"""
    if isinstance(expr, int):
        return expr
    value = sp.sympify(expr, locals={"k": _K}).subs(_K, k)
    if not value.is_integer:
        return None
    return int(value)


def _expand(template: list, k: int, total: int) -> Optional[Tuple[int, ...]]:
    fixed: List[int] = []
    arrow: Optional[int] = None
    for item in template:
        if isinstance(item, dict) and "arrow" in item:
            arrow = _eval(item["arrow"], k)
        elif isinstance(item, dict):
            value, times = _eval(item["repeat"], k), _eval(item["times"], k)
            if value is None or times is None or times < 0:
                return None
            fixed.extend([value] * times)
        else:
            value = _eval(item, k)
            if value is None:
                return None
            fixed.append(value)
    rest = total - sum(fixed)
    if arrow is not None:
        if rest < 0 or rest % arrow != 0:
            return None
        fixed.extend([arrow] * (rest // arrow))
    elif rest != 0:
        return None
    if any(v <= 0 for v in fixed):
        return None
    return make_partition(fixed)


def _matches(entry: dict, k: int) -> bool:
    modulus = entry.get("modulus")
    return modulus is None or k % modulus in entry["residues"]


def table1_rows(a: int, b: int) -> List[FamilyRow]:
    """
    △(a,b) 上分类表给出的全部行

    族按 (1,k), (2,k), (3,k), (k,k+1) 的顺序检查，只用第一个匹配的族

    示例:
    [r.label for r in table1_rows(3, 7)]  # [Tom, Jerry, Spike, Tyke]
    """
    table = load_table1()
    matched_family = None
    rows: List[FamilyRow] = []
    for fam in table["families"]:
        if matched_family is not None and fam["family"] != matched_family:
            continue
        if _eval(fam["a"], 0) == a or fam["a"] == "k":
            k = b if fam["b"] == "k" else a
        else:
            continue
        if k < fam.get("k_min", 1) or (_eval(fam["a"], k), _eval(fam["b"], k)) != (a, b):
            continue
        if not _matches(fam, k):
            continue
        matched_family = fam["family"]
        for row in fam["rows"]:
            if not _matches(row, k):
                continue
            a_part = _expand(row["a_part"], k, a)
            b_part = _expand(row["b_part"], k, b)
            if a_part is None or b_part is None:
                continue
            rows.append(FamilyRow(fam["family"], FamilyLabel(row["label"]), (a_part, b_part)))
    return rows


def classify_family(pair: DualPair, a: int, b: int) -> FamilyLabel:
    """
    按分类表给出族名；也尝试 τ(pair) 与 (b,a)，都不匹配时为 Unnamed

    示例:
    classify_family(((1, 1, 1), (2,)), 2, 3)  # FamilyLabel.JERRY
    """
    candidates = {pair, tau_pair(pair)}
    for x, y in ((a, b), (b, a)):
        for row in table1_rows(x, y):
            if row.pair in candidates:
                return row.label
    return FamilyLabel.UNNAMED


def golden_table1() -> List[Tuple[int, int, List[Tuple[str, DualPair]]]]:
    """随包发布的分类表展开结果"""
    out = []
    for entry in load_table1()["golden"]:
        rows = [(label, (make_partition(p[0]), make_partition(p[1]))) for label, p in entry["rows"]]
        out.append((entry["a"], entry["b"], rows))
    return out


def family_degrees(row: FamilyRow) -> Tuple[int, int]:
    return pair_degrees(row.pair)
