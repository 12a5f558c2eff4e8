"""
零可变 Laurent 多项式（ZMLP）的精确计算

包含:
- core: 格多边形与 Laurent 多项式
- mutation: 变异算子
- divisibility: 整除性不变量
- classify: 分类、证书搜索与变异图
- toric: 环面退化、奇点类型、墙函数与除子抽取
"""
from zmlp import classify, core, divisibility, mutation, toric
from zmlp.errors import ZmlpError

__version__ = '0.1.0'

__all__ = ['classify', 'core', 'divisibility', 'mutation', 'toric', 'ZmlpError']
