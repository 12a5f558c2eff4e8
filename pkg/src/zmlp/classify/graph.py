"""
小牛顿多边形上 ZMLP 的变异图

从 f = 1 出发做 BFS，节点按 canonical_key 去重，边表示一次变异。
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterator, List, Optional, Tuple

import networkx as nx

from zmlp.core.lattice import (
    AffineFunctional,
    LatticePoint,
    box_size,
    dot,
    lattice_point_count,
    primitive,
)
from zmlp.core.laurent import INF, LaurentPoly, binomial_multiplicity, canonical_key, slice_at
from zmlp.errors import NotMutableError, ZmlpError
from zmlp.mutation.operator import MutationSpec, mutate

logger = logging.getLogger(__name__)

MEASURES = ("box", "points")


def _directions(bound: int = 2) -> List[LatticePoint]:
    """坐标绝对值不超过 bound 的本原向量，正负只取其一"""
    out = []
    for i in range(-bound, bound + 1):
        for j in range(-bound, bound + 1):
            if (i, j) == (0, 0):
                continue
            v, g = primitive((i, j))
            if g != 1 or v in out or (-v[0], -v[1]) in out:
                continue
            out.append(v)
    return out


DIRECTIONS = _directions()


def measure_of(f: LaurentPoly, measure: str) -> int:
    poly = f.newton_polygon()
    if measure == "box":
        return box_size(poly)
    if measure == "points":
        return lattice_point_count(poly)
    raise ZmlpError(f"未知的大小度量: {measure}，可选 {MEASURES}")


def graph_candidates(f: LaurentPoly, max_weight: int = 3) -> Iterator[MutationSpec]:
    """
    f 上所有小的候选变异（既能放大也能缩小牛顿多边形）

    对每个方向 m 和法向 n = ±m^⊥，层为 <n,p> - min，φ = W·层 - T，
    T 从 -1 取到最低层切片中 (1+z^m) 的重数
    """
    support = f.support
    for m in DIRECTIONS:
        for sign in (1, -1):
            n = (-sign * m[1], sign * m[0])
            low = min(dot(n, p) for p in support)
            bottom = slice_at(f, AffineFunctional(n, -low), 0)
            d0 = binomial_multiplicity(bottom, m)
            top_t = 4 if d0 is INF else d0
            for w in range(1, max_weight + 1):
                for t in range(-1, top_t + 1):
                    phi = AffineFunctional((w * n[0], w * n[1]), -w * low - t)
                    yield MutationSpec.binomial(phi, m)


def _expand(f: LaurentPoly) -> List[LaurentPoly]:
    images = []
    for spec in graph_candidates(f):
        try:
            g = mutate(f, spec)
        except NotMutableError:
            continue
        if g.is_zero or any(c <= 0 for _, c in g.items()):
            continue
        images.append(g)
    return images


def _canonical_poly(key: tuple) -> LaurentPoly:
    g = LaurentPoly(dict(key[1]))
    xs = [p[0] for p in g.support]
    ys = [p[1] for p in g.support]
    return g.monomial_mul((-min(xs), -min(ys)))


def coefficient_label(f: LaurentPoly) -> str:
    """
    规范代表元的系数数组，行之间用 "/" 分隔

    示例:
    coefficient_label(LaurentPoly.parse("1+x"))  # "1,1"
    """
    rows = _canonical_poly(canonical_key(f)).to_rows()
    return "/".join(",".join(str(c) for c in row) for row in rows)


class MutationGraph:
    """
    变异图：节点是规范化的 ZMLP，边是无向的变异关系

    节点属性:
    - poly: 规范代表元
    - label: 系数数组
    - size: 所用度量下的大小
    - product: 是否由乘积加入
    """

    def __init__(self, measure: str = "box"):
        if measure not in MEASURES:
            raise ZmlpError(f"未知的大小度量: {measure}，可选 {MEASURES}")
        self.measure = measure
        self.graph = nx.Graph()
        self._ids: Dict[tuple, str] = {}

    def __len__(self) -> int:
        return self.graph.number_of_nodes()

    def __contains__(self, f: LaurentPoly) -> bool:
        return canonical_key(f) in self._ids

    def node_id(self, f: LaurentPoly) -> Optional[str]:
        return self._ids.get(canonical_key(f))

    def add_node(self, f: LaurentPoly, product: bool = False) -> Tuple[str, bool]:
        """不存在时插入；返回 (节点 id, 是否新插入)"""
        key = canonical_key(f)
        found = self._ids.get(key)
        if found is not None:
            return found, False
        node = f"n{len(self._ids)}"
        self._ids[key] = node
        rep = _canonical_poly(key)
        self.graph.add_node(
            node,
            poly=rep,
            label=coefficient_label(rep),
            size=measure_of(rep, self.measure),
            product=product,
        )
        return node, True

    def add_edge(self, f: LaurentPoly, g: LaurentPoly) -> None:
        u, v = self.node_id(f), self.node_id(g)
        if u is None or v is None:
            raise ZmlpError("添加边之前需要先添加两个端点")
        if u != v:
            self.graph.add_edge(u, v)

    def polys(self) -> List[LaurentPoly]:
        return [data["poly"] for _, data in self.graph.nodes(data=True)]

    def is_connected_to_one(self) -> bool:
        root = self.node_id(LaurentPoly.one())
        if root is None:
            return False
        return len(nx.node_connected_component(self.graph, root)) == len(self)

    def to_dot(self) -> str:
        """DOT 文本；节点按插入顺序输出，标签为系数数组"""
        labelled = nx.Graph()
        for node, data in self.graph.nodes(data=True):
            attrs = {"label": f'"{data["label"]}"'}
            if data["product"]:
                attrs["style"] = "dashed"
            labelled.add_node(node, **attrs)
        labelled.add_edges_from(sorted(self.graph.edges()))
        return nx.nx_pydot.to_pydot(labelled).to_string()

    def to_json(self) -> dict:
        return {
            "measure": self.measure,
            "nodes": [
                {"id": node, "label": data["label"], "size": data["size"], "product": data["product"]}
                for node, data in self.graph.nodes(data=True)
            ],
            "edges": [list(e) for e in sorted(self.graph.edges())],
        }


def build_mutation_graph(
    max_size: int,
    measure: str = "box",
    include_products: bool = False,
    jobs: int = 1,
) -> MutationGraph:
    """
    构造大小不超过 max_size 的变异图

    参数:
    - max_size: 大小上界
    - measure: "box"（约化摆放的 max(宽, 高)）或 "points"（格点数）
    - include_products: 是否把图中多项式的乘积也加入（默认不加入）
    - jobs: 扩展每层 BFS 前沿时的进程数

    返回:
    MutationGraph

    示例:
    graph = build_mutation_graph(3)
    tom = LaurentPoly.parse("(1+x)^3 + 2*y*(1+x) + y^2")
    tom in graph  # True
    """
    if max_size < 0:
        raise ZmlpError(f"max_size 必须非负: {max_size}")
    graph = MutationGraph(measure)
    one = LaurentPoly.one()
    graph.add_node(one)
    frontier = [one]
    while True:
        _bfs(graph, frontier, max_size, jobs)
        if not include_products:
            break
        frontier = _add_products(graph, max_size)
        if not frontier:
            break
    logger.debug("变异图: %d 个节点, %d 条边", len(graph), graph.graph.number_of_edges())
    return graph


def _bfs(graph: MutationGraph, frontier: List[LaurentPoly], max_size: int, jobs: int) -> None:
    while frontier:
        if jobs > 1 and len(frontier) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                expanded = list(pool.map(_expand, frontier))
        else:
            expanded = [_expand(f) for f in frontier]
        nxt = []
        # 按前沿顺序合并，结果与 jobs 无关
        for f, images in zip(frontier, expanded):
            for g in images:
                if measure_of(g, graph.measure) > max_size:
                    continue
                _, new = graph.add_node(g)
                graph.add_edge(f, g)
                if new:
                    nxt.append(g)
        frontier = nxt


def _add_products(graph: MutationGraph, max_size: int) -> List[LaurentPoly]:
    polys = graph.polys()
    added = []
    for i, f in enumerate(polys):
        for g in polys[i:]:
            if f.is_monomial or g.is_monomial:
                continue
            h = f * g
            if measure_of(h, graph.measure) > max_size:
                continue
            _, new = graph.add_node(h, product=True)
            if new:
                added.append(h)
    return added


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO)
    g = build_mutation_graph(3)
    print("=" * 60)
    print(f"size <= 3: {len(g)} 个节点, {g.graph.number_of_edges()} 条边")
    print("=" * 60)
