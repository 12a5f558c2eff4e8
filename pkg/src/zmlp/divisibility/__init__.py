"""
整除性不变量: div、reqdiv、divstep、对偶划分对以及由 reqdiv 重建多项式
"""
from zmlp.divisibility.partition import DualPair, Partition, conjugate, format_pair, parse_pair
from zmlp.divisibility.reconstruct import reconstruct_from_reqdiv, zmlp_from_pair
from zmlp.divisibility.tuples import (
    DivTuple,
    div_tuple,
    divstep,
    dual_pair,
    dual_tuple,
    reddiv,
    reqdiv,
    verify_zeromut_props,
)

__all__ = [
    'DualPair',
    'Partition',
    'conjugate',
    'format_pair',
    'parse_pair',
    'reconstruct_from_reqdiv',
    'zmlp_from_pair',
    'DivTuple',
    'div_tuple',
    'divstep',
    'dual_pair',
    'dual_tuple',
    'reddiv',
    'reqdiv',
    'verify_zeromut_props',
]
