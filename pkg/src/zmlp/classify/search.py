"""
一般变异证书的有界最优优先搜索

候选变异来自牛顿多边形的每条边 e: h = 1+z^{m_e}，φ = W·(到 e 的层) - T，
1 <= T <= ℓ(e)，1 <= W <= T；线段用常数 φ。按像的格点数从小到大扩展。
"""
from __future__ import annotations

import heapq
import itertools
import logging
from typing import Iterator, List, Optional

from zmlp.core.lattice import AffineFunctional, dot, lattice_point_count
from zmlp.core.laurent import INF, LaurentPoly, canonical_key
from zmlp.divisibility.tuples import div_tuple
from zmlp.errors import NotMutableError
from zmlp.mutation.operator import CertificateStep, MutationCertificate, MutationSpec, mutate

logger = logging.getLogger(__name__)


def candidate_specs(f: LaurentPoly) -> Iterator[MutationSpec]:
    """
    f 上按边生成的候选变异（只给出由 div 元组判定可变的那些）
    """
    poly = f.newton_polygon()
    if poly.dim == 0:
        return
    if poly.dim == 1:
        edge = poly.edges[0]
        for t in range(edge.length, 0, -1):
            yield MutationSpec.binomial(AffineFunctional((0, 0), -t), edge.tangent)
        return
    for edge in poly.edges:
        div = div_tuple(f, edge).values
        base = dot(edge.normal, edge.start)
        for t in range(1, edge.length + 1):
            for w in range(1, t + 1):
                ok = all(
                    d is INF or d >= t - w * i
                    for i, d in enumerate(div)
                    if w * i < t
                )
                if not ok:
                    continue
                phi = AffineFunctional((w * edge.normal[0], w * edge.normal[1]), -w * base - t)
                yield MutationSpec.binomial(phi, edge.tangent)


def verify_zmlp(
    f: LaurentPoly,
    depth_bound: int = 10,
    node_bound: int = 5000,
    strict: bool = True,
) -> Optional[MutationCertificate]:
    """
    搜索把 f 变到单位单项式的变异序列

    参数:
    - f: 正整系数的 Laurent 多项式
    - depth_bound: 最多变异步数
    - node_bound: 最多扩展的节点数
    - strict: 只接受格点数严格下降的变异

    返回:
    MutationCertificate；超出界限时返回 None（不代表 f 不是零可变的）
    """
    if f.is_unit_monomial:
        return MutationCertificate(f)
    counter = itertools.count()
    heap = [(lattice_point_count(f.newton_polygon()), next(counter), f, [])]
    visited = {canonical_key(f)}
    expanded = 0
    while heap and expanded < node_bound:
        size, _, g, path = heapq.heappop(heap)
        expanded += 1
        if len(path) >= depth_bound:
            continue
        for spec in candidate_specs(g):
            try:
                image = mutate(g, spec)
            except NotMutableError:
                continue
            if image.is_zero:
                continue
            if image.is_unit_monomial:
                cert = MutationCertificate(f)
                for s in path + [spec]:
                    cert.push(CertificateStep(s, label="mutation"))
                logger.debug("找到证书: %d 步, 扩展 %d 个节点", len(path) + 1, expanded)
                return cert
            count = lattice_point_count(image.newton_polygon())
            if strict and count >= size:
                continue
            key = canonical_key(image)
            if key in visited:
                continue
            visited.add(key)
            heapq.heappush(heap, (count, next(counter), image, path + [spec]))
    logger.debug("未找到证书: 扩展 %d 个节点", expanded)
    return None


def certificate_polygons(cert: MutationCertificate) -> List:
    """证书中每个多项式的牛顿多边形"""
    return [p.newton_polygon() for p in cert.polys]
