"""
JSON / DOT 读写，全部使用 UTF-8
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Union

import numpy as np

from zmlp.core.lattice import LatticePolygon, polygon_from_json
from zmlp.core.laurent import LaurentPoly
from zmlp.errors import ZmlpError

PathLike = Union[str, Path]


def _native(value: Any) -> Any:
    # DataFrame 导出的 numpy 标量
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"无法序列化为 JSON: {type(value).__name__}")


def dumps(data: Any) -> str:
    """确定性的 JSON 文本：键排序，缩进 2"""
    return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True, default=_native)


def read_json(path: PathLike) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ZmlpError(f"文件不存在: {path}")
    except json.JSONDecodeError as exc:
        raise ZmlpError(f"{path} 不是合法的 JSON: {exc}")


def write_json(data: Any, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(data) + "\n", encoding="utf-8")
    return path


def write_text(text: str, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def poly_from_data(data: Any) -> LaurentPoly:
    """
    多项式的三种 JSON 写法:
    - {"terms": [{"exp": [i, j], "coeff": c}, ...]}
    - {"rows": [[...], ...], "y0": 0}
    - {"poly": "1 + x + y"} 或直接一个字符串
    """
    if isinstance(data, str):
        return LaurentPoly.parse(data)
    if not isinstance(data, dict):
        raise ZmlpError(f"无法识别的多项式 JSON: {data!r}")
    if "terms" in data:
        return LaurentPoly.from_json(data)
    if "rows" in data:
        return LaurentPoly.from_rows(data["rows"], data.get("y0", 0))
    if "poly" in data:
        return LaurentPoly.parse(data["poly"])
    raise ZmlpError(f"多项式 JSON 需要 terms、rows 或 poly 字段: {sorted(data)}")


def load_poly(path: PathLike) -> LaurentPoly:
    return poly_from_data(read_json(path))


def load_polygon(path: PathLike) -> LatticePolygon:
    """{"vertices": [...]}；也接受多项式 JSON，取其牛顿多边形"""
    data = read_json(path)
    if isinstance(data, dict) and "vertices" in data:
        return polygon_from_json(data)
    return poly_from_data(data).newton_polygon()


@lru_cache(maxsize=None)
def load_figures() -> dict:
    """随包发布的图例数据"""
    text = resources.files("zmlp").joinpath("data/figures.json").read_text(encoding="utf-8")
    return json.loads(text)


def figure_poly(name: str) -> LaurentPoly:
    """
    按名字取图例中的多项式

    示例:
    figure_poly("tom")  # (1+x)³ + 2y(1+x) + y²
    """
    figures = load_figures()
    if name not in figures or not isinstance(figures[name], dict) or "rows" not in figures[name]:
        raise ZmlpError(f"没有名为 {name} 的多项式图例")
    return poly_from_data(figures[name])
