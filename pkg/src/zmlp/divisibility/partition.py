"""
整数划分与对偶划分对
划分用递减的正整数元组表示，空元组是 0 的划分
"""
from __future__ import annotations

import re
from typing import Iterator, List, Sequence, Tuple

from zmlp.errors import ZmlpError

Partition = Tuple[int, ...]
DualPair = Tuple[Partition, Partition]


def make_partition(parts: Sequence[int]) -> Partition:
    """排序为递减并检查各部分为正"""
    parts = tuple(sorted((int(p) for p in parts), reverse=True))
    if parts and parts[-1] <= 0:
        raise ZmlpError(f"划分的各部分必须为正: {parts}")
    return parts


def conjugate(p: Sequence[int]) -> Partition:
    """Young 图转置，例如 (3) → (1,1,1)，(2,1) → (2,1)"""
    p = make_partition(p)
    if not p:
        return ()
    return tuple(sum(1 for part in p if part > i) for i in range(p[0]))


def degree(p: Sequence[int]) -> int:
    return sum(p)


def square_sum(p: Sequence[int]) -> int:
    return sum(x * x for x in p)


def suffix_sums(steps: Sequence[int], length: int) -> List[int]:
    """d_k = Σ_{l>=k} s_l，k = 0..length-1（不足处补零）"""
    padded = list(steps) + [0] * max(0, length - len(steps))
    out = []
    total = sum(padded[:length])
    for k in range(length):
        out.append(total)
        total -= padded[k]
    return out


def partitions(n: int, max_part: int) -> Iterator[Partition]:
    """n 的所有部分不超过 max_part 的划分（递减序）"""
    def helper(rest: int, bound: int) -> Iterator[List[int]]:
        if rest == 0:
            yield []
            return
        for x in range(min(rest, bound), 0, -1):
            for tail in helper(rest - x, x):
                yield [x] + tail

    for p in helper(n, max_part):
        yield tuple(p)


def partitions_with_squares(n: int, max_part: int, squares: int) -> Iterator[Partition]:
    """
    n 的部分不超过 max_part、平方和恰为 squares 的划分

    剪枝: 剩余 r、剩余平方和 s、当前上界 p 时必须 r <= s <= r·p
    """
    def helper(rest: int, sq: int, bound: int) -> Iterator[List[int]]:
        if rest == 0:
            if sq == 0:
                yield []
            return
        if sq < rest or sq > rest * bound:
            return
        for x in range(min(rest, bound), 0, -1):
            for tail in helper(rest - x, sq - x * x, x):
                yield [x] + tail

    if n == 0:
        if squares == 0:
            yield ()
        return
    for p in helper(n, squares, max_part):
        yield tuple(p)


def pair_degrees(pair: DualPair) -> Tuple[int, int]:
    return degree(pair[0]), degree(pair[1])


def exists_inequalities(pair: DualPair) -> bool:
    """max(𝐚) <= b，max(𝐛) <= a，max(𝐚)+max(𝐛) <= max(a,b)"""
    a, b = pair_degrees(pair)
    max_a = max(pair[0], default=0)
    max_b = max(pair[1], default=0)
    return max_a <= b and max_b <= a and max_a + max_b <= max(a, b)


_PAIR_RE = re.compile(r"^\s*\(([\d,\s]*)\)\s*,\s*\(([\d,\s]*)\)\s*$")


def parse_partition(text: str) -> Partition:
    """"2,1" 或 "(2,1)" → (2,1)"""
    text = text.strip().strip("()")
    if not text:
        return ()
    return make_partition(int(t) for t in text.split(","))


def parse_pair(text: str) -> DualPair:
    """
    "<a-part>|<b-part>" 或文本记法 "(a-part),(b-part)"

    示例:
    parse_pair("1,1|2,1")        # ((1,1),(2,1))
    parse_pair("(1,1),(2,1)")    # ((1,1),(2,1))
    """
    if "|" in text:
        left, right = text.split("|", 1)
    else:
        match = _PAIR_RE.match(text)
        if match is None:
            raise ZmlpError(f"对偶划分对的格式应为 '<a-part>|<b-part>' 或 '(..),(..)': {text!r}")
        left, right = match.group(1), match.group(2)
    try:
        return parse_partition(left), parse_partition(right)
    except ZmlpError:
        raise
    except ValueError:
        raise ZmlpError(f"划分中有非整数: {text!r}")


def format_partition(p: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


def format_pair(pair: DualPair) -> str:
    """文本记法 "(2,1),(1,1)" """
    return f"{format_partition(pair[0])},{format_partition(pair[1])}"


def pair_to_json(pair: DualPair) -> list:
    return [list(pair[0]), list(pair[1])]


def pair_from_json(data: list) -> DualPair:
    return make_partition(data[0]), make_partition(data[1])
