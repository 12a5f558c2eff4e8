"""
除子抽取的约化证书

两种做法：
- 第一种: 固定 a = |𝐚|，在 𝐛 上做 α⁻¹（去掉一个等于 a 的部分）和 β（b_i ↦ a - b_i，要求 max(𝐛) < a）
- 第二种: 对 τ(𝐚, 𝐛) 做第一种

约化到已证明的基本情形后，奇点类型取自锥 ⟨(1,0,0), (0,1,0), (1,-B,A)⟩，
并与基本情形的类型比较。
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Deque, Dict, List, Optional, Tuple

from zmlp.classify.families import FamilyLabel, classify_family
from zmlp.divisibility.partition import DualPair, format_pair, make_partition, pair_degrees
from zmlp.errors import ZmlpError
from zmlp.mutation.triangular import tau_pair
from zmlp.toric.singularity import QuotientSingularity, sing_equivalent, singularity_type

logger = logging.getLogger(__name__)

SPIKE_REASON = "Spike family: open conjecture, no proved base case"
NO_BASE_REASON = "no reduction to a proved base case"


def ducat_sequence(m: int, k: int) -> Tuple[List[int], int, int]:
    """
    Q_0 = 0, Q_1 = 1, Q_{j+1} = m·Q_j - Q_{j-1}

    返回:
    (Q_0..Q_{k+1}, a = Q_k + Q_{k-1}, r = Q_k + Q_{k+1})，目标类型 1/r(1,-1,a)

    示例:
    ducat_sequence(1, 1)  # ([0, 1, 1], 1, 2)
    ducat_sequence(1, 2)  # ([0, 1, 1, 0], 2, 1)
    """
    if m < 1 or k < 1:
        raise ZmlpError(f"m, k 必须 >= 1: m={m}, k={k}")
    q = [0, 1]
    while len(q) < k + 2:
        q.append(m * q[-1] - q[-2])
    return q, q[k] + q[k - 1], q[k] + q[k + 1]


def _ducat_match(pair: DualPair) -> Optional[Tuple[int, int, int]]:
    """((r), (q)^{m+2}) 形式时返回 (m, k, a)"""
    a_part, b_part = pair
    if len(a_part) != 1 or len(b_part) < 3 or len(set(b_part)) != 1:
        return None
    r, q, m = a_part[0], b_part[0], len(b_part) - 2
    for k in range(1, r + 2):
        seq, a, rr = ducat_sequence(m, k)
        if seq[k] == q and rr == r:
            return m, k, a
    return None


def base_case(pair: DualPair) -> Optional[Tuple[str, QuotientSingularity]]:
    """
    已证明的基本情形及其奇点类型

    - A_n: ((1), (1,...,1))，光滑
    - Tom: ((1,...,1), (1))，1/n(1,-1,-1)
    - Ducat(m,k): ((r), (Q_k)^{m+2})，1/r(1,-1,Q_k+Q_{k-1})
    - ((3), (2,1,1,1))，1/3(1,-1,-1)
    """
    a_part, b_part = pair
    if not a_part or not b_part:
        return None
    if a_part == (1,) and set(b_part) == {1}:
        return "A_n", QuotientSingularity(1, (0, 0, 0))
    if b_part == (1,) and set(a_part) == {1}:
        n = len(a_part)
        return "Tom", QuotientSingularity(n, (1, -1, -1))
    if pair == ((3,), (2, 1, 1, 1)):
        return "Tyke", QuotientSingularity(3, (1, -1, -1))
    found = _ducat_match(pair)
    if found is not None:
        m, k, a = found
        r = a_part[0]
        return f"Ducat(m={m},k={k})", QuotientSingularity(r, (1, -1, a))
    return None


def _variant_moves(pair: DualPair) -> List[Tuple[str, DualPair]]:
    a, _ = pair_degrees(pair)
    out = []
    if a in pair[1]:
        parts = list(pair[1])
        parts.remove(a)
        if parts:
            out.append(("alpha_inv", (pair[0], make_partition(parts))))
    if pair[1] and max(pair[1]) < a:
        out.append(("beta", (pair[0], make_partition(a - x for x in pair[1]))))
    return out


def _reduce(pair: DualPair) -> Optional[Tuple[List[str], DualPair]]:
    """BFS 到第一个基本情形"""
    if base_case(pair) is not None:
        return [], pair
    parents: Dict[DualPair, Tuple[DualPair, str]] = {}
    queue: Deque[DualPair] = deque([pair])
    seen = {pair}
    while queue:
        cur = queue.popleft()
        for move, nxt in _variant_moves(cur):
            if nxt in seen:
                continue
            seen.add(nxt)
            parents[nxt] = (cur, move)
            if base_case(nxt) is not None:
                path = []
                node = nxt
                while node != pair:
                    node, mv = parents[node]
                    path.append(mv)
                return list(reversed(path)), nxt
            queue.append(nxt)
    return None


def extraction_cone(a: int, b: int) -> List[Tuple[int, int, int]]:
    return [(1, 0, 0), (0, 1, 0), (1, -b, a)]


@dataclass
class ExtractionCertificate:
    """
    约化证书

    - variant: 1 或 2
    - moves: 作用在（第二种时为 τ 之后的）划分对上的 α⁻¹ / β 序列
    - base / base_pair: 到达的基本情形
    - singularity: 由锥 ⟨e1, e2, (1,-B,A)⟩ 算出的类型
    - base_singularity: 基本情形给出的类型
    """
    pair: DualPair
    a: int
    b: int
    variant: int
    moves: List[str]
    base: str
    base_pair: DualPair
    singularity: QuotientSingularity
    base_singularity: QuotientSingularity
    chain: List[DualPair] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return sing_equivalent(self.singularity, self.base_singularity)

    def to_json(self) -> dict:
        return {
            "pair": format_pair(self.pair),
            "a": self.a,
            "b": self.b,
            "variant": self.variant,
            "moves": self.moves,
            "base": self.base,
            "base_pair": format_pair(self.base_pair),
            "singularity": self.singularity.to_json(),
            "base_singularity": self.base_singularity.to_json(),
            "consistent": self.consistent,
        }


@dataclass
class ExtractionResult:
    certificate: Optional[ExtractionCertificate]
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "certificate": self.certificate.to_json() if self.certificate is not None else None,
            "reason": self.reason,
        }


def _replay_chain(pair: DualPair, moves: List[str]) -> List[DualPair]:
    chain = [pair]
    for mv in moves:
        options = dict(_variant_moves(chain[-1]))
        chain.append(options[mv])
    return chain


def extraction_result(pair: DualPair, a: int, b: int) -> ExtractionResult:
    """
    先试第一种做法，再试第二种；Spike 族直接返回空证书并给出原因
    """
    if pair_degrees(pair) != (a, b):
        raise ZmlpError(f"{format_pair(pair)} 的次数不是 ({a}, {b})")
    if classify_family(pair, a, b) == FamilyLabel.SPIKE:
        return ExtractionResult(None, SPIKE_REASON)
    for variant, start in ((1, pair), (2, tau_pair(pair))):
        found = _reduce(start)
        if found is None:
            continue
        moves, base_pair = found
        name, base_type = base_case(base_pair)
        big_a, big_b = pair_degrees(start)
        cert = ExtractionCertificate(
            pair=pair,
            a=a,
            b=b,
            variant=variant,
            moves=moves,
            base=name,
            base_pair=base_pair,
            singularity=singularity_type(extraction_cone(big_a, big_b)),
            base_singularity=base_type,
            chain=_replay_chain(start, moves),
        )
        if not cert.consistent:
            logger.warning("%s: 基本情形 %s 的类型 %s 与 %s 不一致", format_pair(pair), name, base_type, cert.singularity)
        return ExtractionResult(cert, "")
    logger.debug("%s 两种做法都没有到达基本情形", format_pair(pair))
    return ExtractionResult(None, NO_BASE_REASON)


def extraction_certificate(pair: DualPair, a: int, b: int) -> Optional[ExtractionCertificate]:
    """
    除子抽取的约化证书；找不到（例如 Spike 族）时返回 None

    示例:
    cert = extraction_certificate(((1, 1), (2, 1)), 2, 3)
    cert.variant, cert.base  # (1, 'Tom')
    """
    return extraction_result(pair, a, b).certificate


if __name__ == "__main__":
    from zmlp.classify.families import table1_rows

    for a, b in [(2, 3), (2, 5), (3, 4), (3, 5), (3, 7), (4, 5)]:
        for row in table1_rows(a, b):
            res = extraction_result(row.pair, a, b)
            cert = res.certificate
            if cert is None:
                print(f"({a},{b}) {row.label.value:6s} {format_pair(row.pair)}: {res.reason}")
            else:
                print(f"({a},{b}) {row.label.value:6s} {format_pair(row.pair)}: 第{cert.variant}种, {cert.moves} -> {cert.base}, {cert.singularity}")
