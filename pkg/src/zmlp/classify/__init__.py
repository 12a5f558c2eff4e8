"""
ZMLP 的分类: 组合枚举、分类表、三角形约化、证书搜索、变异图与批量验证
"""
from zmlp.classify.engine import VerificationEngine
from zmlp.classify.enumeration import count_comb, enumerate_comb
from zmlp.classify.families import FamilyLabel, classify_family, table1_rows
from zmlp.classify.graph import MutationGraph, build_mutation_graph
from zmlp.classify.reduce import triangular_certificate, triangular_reduce
from zmlp.classify.search import verify_zmlp
from zmlp.classify.table2 import Table2Model

__all__ = [
    'VerificationEngine',
    'count_comb',
    'enumerate_comb',
    'FamilyLabel',
    'classify_family',
    'table1_rows',
    'MutationGraph',
    'build_mutation_graph',
    'triangular_certificate',
    'triangular_reduce',
    'verify_zmlp',
    'Table2Model',
]
