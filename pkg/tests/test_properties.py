from functools import lru_cache
from math import comb, gcd

import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from zmlp.classify.enumeration import enumerate_comb
from zmlp.core.lattice import (
    UnimodularAffineMap,
    boundary_closes,
    canonical_form,
    convex_hull,
    standard_triangle,
)
from zmlp.core.laurent import LaurentPoly, binomial_multiplicity
from zmlp.divisibility.partition import square_sum
from zmlp.divisibility.reconstruct import zmlp_from_pair
from zmlp.divisibility.tuples import dual_pair
from zmlp.mutation.triangular import alpha, alpha_pair, beta, beta_pair, tau, tau_pair

CASES = settings(max_examples=1000, deadline=None)

SMALL_PAIRS = [
    pair
    for a in range(1, 9)
    for b in range(1, 10 - a)
    if gcd(a, b) == 1
    for pair in enumerate_comb(a, b)
]
pairs = st.sampled_from(SMALL_PAIRS)

points = st.tuples(st.integers(-4, 4), st.integers(-4, 4))
shears = st.lists(st.tuples(st.sampled_from(["upper", "lower", "swap", "flip"]), st.integers(-3, 3)), max_size=5)


@lru_cache(maxsize=None)
def _zmlp(pair):
    return zmlp_from_pair(pair)


@lru_cache(maxsize=None)
def _dual(f: LaurentPoly):
    return dual_pair(f)


def _restrict(f: LaurentPoly, keep) -> LaurentPoly:
    return LaurentPoly({p: c for p, c in f.items() if keep(p)})


def _unimodular(moves, shift) -> UnimodularAffineMap:
    generators = {
        "upper": lambda k: ((1, k), (0, 1)),
        "lower": lambda k: ((1, 0), (k, 1)),
        "swap": lambda k: ((0, 1), (1, 0)),
        "flip": lambda k: ((-1, 0), (0, 1)),
    }
    result = UnimodularAffineMap.translate(shift)
    for kind, k in moves:
        result = UnimodularAffineMap(generators[kind](k)).compose(result)
    return result


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=6).filter(any), st.integers(0, 3))
@CASES
def test_multiplicity_is_order_of_vanishing(coeffs, k):
    g = LaurentPoly({(i, 0): c for i, c in enumerate(coeffs)}) * LaurentPoly.binomial_power((1, 0), k)
    x = sp.Symbol("x")
    expr = g.to_sympy()
    order = 0
    while expr.subs(x, -1) == 0:
        expr = sp.diff(expr, x)
        order += 1
    assert binomial_multiplicity(g, (1, 0)) == order


@given(
    st.lists(st.integers(-5, 5), min_size=1, max_size=5).filter(any),
    st.integers(0, 3),
    st.integers(0, 3),
    st.integers(0, 3),
    st.integers(0, 3),
)
@CASES
def test_weighted_binomial_sum_keeps_divisibility(coeffs, i, extra, a, b):
    d = i + extra
    g = LaurentPoly({(k, 0): c for k, c in enumerate(coeffs)}) * LaurentPoly.binomial_power((1, 0), d)
    weighted = LaurentPoly({(k, 0): comb(a * k + b, i) * c for (k, _), c in g.items()})
    if not weighted.is_zero:
        assert binomial_multiplicity(weighted, (1, 0)) >= d - i


@given(pairs)
@CASES
def test_square_sum_identity(pair):
    f = _zmlp(pair)
    a, b, _ = standard_triangle(f.newton_polygon())
    found = _dual(f)
    assert square_sum(found[0]) + square_sum(found[1]) == a * b + 1


@given(pairs)
@CASES
def test_edges_are_binomials(pair):
    f = _zmlp(pair)
    assert f is not None, pair
    a, b = sum(pair[0]), sum(pair[1])
    assert _restrict(f, lambda p: p[1] == 0) == LaurentPoly.binomial_power((1, 0), b)
    assert _restrict(f, lambda p: p[0] == 0) == LaurentPoly.binomial_power((0, 1), a)
    hyp = _restrict(f, lambda p: a * p[0] + b * p[1] == a * b)
    assert hyp == LaurentPoly({(b, 0): 1, (0, a): 1})


@given(pairs)
@CASES
def test_involutions(pair):
    f = _zmlp(pair)
    assert tau(tau(f)) == f
    if max(pair[1]) < sum(pair[0]):
        assert beta(beta(f)) == f


@given(pairs)
@CASES
def test_dual_pair_commutes_with_moves(pair):
    f = _zmlp(pair)
    assert _dual(f) == pair
    assert _dual(tau(f)) == tau_pair(pair)
    assert _dual(alpha(f)) == alpha_pair(pair)
    if max(pair[1]) < sum(pair[0]):
        assert _dual(beta(f)) == beta_pair(pair)


@given(st.lists(points, min_size=3, max_size=8), shears, points)
@CASES
def test_canonical_form_is_unimodular_invariant(pts, moves, shift):
    poly = convex_hull(pts)
    assume(poly.dim == 2)
    image = _unimodular(moves, shift).apply_polygon(poly)
    assert set(canonical_form(image).vertices) == set(canonical_form(poly).vertices)


@given(st.lists(points, min_size=2, max_size=8))
@CASES
def test_polygons_close(pts):
    poly = convex_hull(pts)
    assume(poly.dim == 2)
    assert boundary_closes(poly)
