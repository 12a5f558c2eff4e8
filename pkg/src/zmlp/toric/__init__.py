"""
环面几何: 锥与扇、循环商奇点、墙函数、除子抽取
"""
from zmlp.toric.cones import Cone3, Fan3, central_subdivision, dual_cone, star_subdivision, toric_degeneration
from zmlp.toric.extraction import ExtractionCertificate, extraction_certificate
from zmlp.toric.singularity import QuotientSingularity, sing_equivalent, singularity_type
from zmlp.toric.walls import WallFunction, triangle_walls, wall_functions

__all__ = [
    'Cone3',
    'Fan3',
    'central_subdivision',
    'dual_cone',
    'star_subdivision',
    'toric_degeneration',
    'ExtractionCertificate',
    'extraction_certificate',
    'QuotientSingularity',
    'sing_equivalent',
    'singularity_type',
    'WallFunction',
    'triangle_walls',
    'wall_functions',
]
