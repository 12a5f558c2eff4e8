"""
格、Laurent 多项式与精确线性代数
"""
from zmlp.core.lattice import (
    AffineFunctional,
    Edge,
    LatticePoint,
    LatticePolygon,
    Point,
    Segment,
    UnimodularAffineMap,
    box_size,
    canonical_form,
    classify_rectangular,
    convex_hull,
    lattice_point_count,
    lattice_points,
    standard_triangle,
    triangle,
)
from zmlp.core.laurent import INF, LaurentPoly, binomial_multiplicity, canonical_key, exact_divide, slices

__all__ = [
    'AffineFunctional',
    'Edge',
    'LatticePoint',
    'LatticePolygon',
    'Point',
    'Segment',
    'UnimodularAffineMap',
    'box_size',
    'canonical_form',
    'classify_rectangular',
    'convex_hull',
    'lattice_point_count',
    'lattice_points',
    'standard_triangle',
    'triangle',
    'INF',
    'LaurentPoly',
    'binomial_multiplicity',
    'canonical_key',
    'exact_divide',
    'slices',
]
