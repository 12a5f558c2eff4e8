"""
三角形变异的约化证书
在对偶划分对上做 BFS（τ, α⁻¹, β），然后在多项式层面回放并收尾到 1
"""
from __future__ import annotations

import logging
from collections import deque
from typing import Deque, Dict, List, Optional, Tuple

from zmlp.core.lattice import AffineFunctional
from zmlp.core.laurent import LaurentPoly
from zmlp.divisibility.partition import DualPair, pair_degrees
from zmlp.divisibility.reconstruct import zmlp_from_pair
from zmlp.errors import NotMutableError, ZmlpError
from zmlp.mutation.operator import CertificateStep, MutationCertificate, MutationSpec
from zmlp.mutation.triangular import alpha_inv_pair, beta_pair, tau_pair, triangular_steps

logger = logging.getLogger(__name__)

BASE_PAIR: DualPair = ((1,), (1,))


def is_base(pair: DualPair) -> bool:
    """((1),(1))、有空划分（线段）或 a + b <= 2"""
    a, b = pair_degrees(pair)
    return pair == BASE_PAIR or not pair[0] or not pair[1] or a + b <= 2


def _moves(pair: DualPair, last_tau: bool) -> List[Tuple[str, DualPair]]:
    out = []
    if not last_tau:
        out.append(("tau", tau_pair(pair)))
    inv = alpha_inv_pair(pair)
    if inv is not None:
        out.append(("alpha_inv", inv))
    a, b = pair_degrees(pair)
    if pair[1] and max(pair[1]) <= a:
        reflected = beta_pair(pair)
        if pair_degrees(reflected)[1] < b:
            out.append(("beta", reflected))
    return out


def triangular_reduce(pair: DualPair) -> Optional[List[str]]:
    """
    只用初等三角形变异把 pair 约化到基本情形

    返回:
    变换名列表（"tau" / "alpha_inv" / "beta"）；搜索穷尽时返回 None

    示例:
    triangular_reduce(((1, 1), (2, 1)))  # ['alpha_inv', 'tau', 'alpha_inv']
    triangular_reduce(((4, 1), (3, 3, 1)))  # None
    """
    if is_base(pair):
        return []
    start = (pair, False)
    parents: Dict[Tuple[DualPair, bool], Tuple[Tuple[DualPair, bool], str]] = {}
    queue: Deque[Tuple[DualPair, bool]] = deque([start])
    seen = {start}
    while queue:
        state = queue.popleft()
        current, last_tau = state
        for move, nxt in _moves(current, last_tau):
            child = (nxt, move == "tau")
            if child in seen:
                continue
            seen.add(child)
            parents[child] = (state, move)
            if is_base(nxt):
                path = []
                node = child
                while node != start:
                    node, mv = parents[node]
                    path.append(mv)
                return list(reversed(path))
            queue.append(child)
    logger.debug("三角形约化失败: %s（共 %d 个状态）", pair, len(seen))
    return None


def finish_to_one(cert: MutationCertificate) -> MutationCertificate:
    """
    基本情形收尾: 三角形先做 α⁻¹ 变成线段，线段 z^c(1+z^m)^k 用常数 φ = -k 变成 z^c
    """
    for _ in range(8):
        g = cert.target
        if g.is_unit_monomial:
            return cert
        poly = g.newton_polygon()
        if poly.dim == 2:
            found = triangular_steps(g, "alpha_inv")
            if found is None:
                raise NotMutableError(-1, f"基本三角形 {poly} 上 α⁻¹ 不可变")
            for step in found[1]:
                cert.push(step)
        elif poly.dim == 1:
            edge = poly.edges[0]
            spec = MutationSpec.binomial(AffineFunctional((0, 0), -edge.length), edge.tangent)
            cert.push(CertificateStep(spec, label="collapse"))
        else:
            raise ZmlpError(f"终点 {g} 不是单位单项式")
    raise ZmlpError("收尾步骤过多")


def replay_triangular(pair: DualPair, moves: List[str]) -> MutationCertificate:
    """
    由 pair 重建多项式，按 moves 逐步做初等变异，最后收尾到单位单项式
    """
    f = zmlp_from_pair(pair)
    if f is None:
        raise ZmlpError(f"无法由 {pair} 重建多项式")
    return poly_certificate(f, moves)


def triangular_certificate(pair: DualPair) -> Optional[MutationCertificate]:
    moves = triangular_reduce(pair)
    if moves is None:
        return None
    return replay_triangular(pair, moves)


def poly_certificate(f: LaurentPoly, moves: List[str]) -> MutationCertificate:
    """对给定多项式（而非划分对）回放初等变异"""
    cert = MutationCertificate(f)
    for move in moves:
        found = triangular_steps(cert.target, move)
        if found is None:
            raise NotMutableError(-1, f"{move} 在 {cert.target} 上不可变")
        for step in found[1]:
            cert.push(step)
    return finish_to_one(cert)
