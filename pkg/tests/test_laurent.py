import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zmlp.core.lattice import AffineFunctional, UnimodularAffineMap, convex_hull, triangle
from zmlp.core.laurent import (
    INF,
    LaurentPoly,
    binomial_multiplicity,
    canonical_key,
    exact_divide,
    slice_at,
    slices,
)
from zmlp.errors import EmptyPolynomialError, NotCollinearError, ZmlpError

small_polys = st.dictionaries(
    st.tuples(st.integers(-2, 3), st.integers(-2, 3)),
    st.integers(-4, 4).filter(lambda c: c != 0),
    min_size=1,
    max_size=8,
).map(LaurentPoly)

line_coeffs = st.lists(st.integers(-3, 3), min_size=1, max_size=5).filter(any)


class TestParse:
    def test_tom(self, tom):
        assert tom == LaurentPoly.parse("(1+x)^3 + 2*y*(1+x) + y^2")
        assert tom.newton_polygon() == triangle(2, 3)
        assert tom.to_rows() == [[1, 3, 3, 1], [2, 2], [1]]

    def test_negative_exponents(self):
        f = LaurentPoly.parse("y^2*(1+y^-1)^2 + x*y^2")
        assert f == LaurentPoly.from_rows([[1], [2], [1, 1]])

    def test_rejects_other_variables(self):
        with pytest.raises(ZmlpError):
            LaurentPoly.parse("1 + z")

    def test_rejects_fractional_coefficients(self):
        with pytest.raises(ZmlpError):
            LaurentPoly.parse("x/2 + 1")

    def test_json(self, tom):
        assert LaurentPoly.from_json(tom.to_json()) == tom


class TestArithmetic:
    def test_zero_coefficients_not_stored(self):
        f = LaurentPoly({(0, 0): 1, (1, 0): 0})
        assert f.support == [(0, 0)]
        assert (f - f).is_zero

    def test_binomial_power(self):
        assert LaurentPoly.binomial_power((1, 0), 3) == LaurentPoly.parse("(1+x)^3")
        assert LaurentPoly.binomial_power((0, -1), 2, (0, 2)) == LaurentPoly.parse("(1+y)^2")

    def test_negative_power_raises(self):
        with pytest.raises(ZmlpError):
            LaurentPoly.parse("1+x") ** -1

    def test_unit_monomial(self):
        assert LaurentPoly.monomial((3, -1)).is_unit_monomial
        assert not LaurentPoly.monomial((3, -1), 2).is_unit_monomial

    def test_swap(self, tom):
        assert tom.swap().swap() == tom
        assert tom.swap().newton_polygon() == convex_hull([(0, 0), (0, 3), (2, 0)])

    def test_empty_newton_polygon(self):
        with pytest.raises(EmptyPolynomialError):
            LaurentPoly.zero().newton_polygon()


class TestSlices:
    def test_tom_slices(self, tom):
        phi = AffineFunctional((0, 2), -3)
        levels = [s.level for s in slices(tom, phi)]
        assert levels == [-3, -1, 1]
        assert slice_at(tom, phi, -1) == LaurentPoly.parse("2*y*(1+x)")
        assert slice_at(tom, phi, 0).is_zero

    def test_slices_of_zero(self):
        with pytest.raises(EmptyPolynomialError):
            slices(LaurentPoly.zero(), AffineFunctional((1, 0)))

    @given(small_polys, st.tuples(st.integers(-2, 2), st.integers(-2, 2)), st.integers(-3, 3))
    @settings(max_examples=60, deadline=None)
    def test_slices_reassemble(self, f, normal, c):
        total = LaurentPoly.zero()
        for s in slices(f, AffineFunctional(normal, c)):
            total = total + s.poly
        assert total == f


class TestMultiplicity:
    def test_examples(self):
        assert binomial_multiplicity(LaurentPoly.parse("(1+x)^3"), (1, 0)) == 3
        assert binomial_multiplicity(LaurentPoly.parse("2 + x"), (1, 0)) == 0
        assert binomial_multiplicity(LaurentPoly.parse("y*(1+y)^2"), (0, -1)) == 2
        assert binomial_multiplicity(LaurentPoly.zero(), (1, 0)) is INF

    def test_diagonal_direction(self):
        g = LaurentPoly.binomial_power((1, 1), 2, (3, 0))
        assert binomial_multiplicity(g, (2, 2)) == 2

    def test_not_collinear(self):
        with pytest.raises(NotCollinearError):
            binomial_multiplicity(LaurentPoly.parse("1 + x + y"), (1, 0))

    @given(line_coeffs, st.integers(0, 3))
    @settings(max_examples=60, deadline=None)
    def test_multiplication_increments(self, coeffs, k):
        g = LaurentPoly({(i, 0): c for i, c in enumerate(coeffs)})
        before = binomial_multiplicity(g, (1, 0))
        after = binomial_multiplicity(g * LaurentPoly.binomial_power((1, 0), k), (1, 0))
        assert after == before + k


class TestExactDivide:
    def test_divides(self):
        f = LaurentPoly.parse("y^2*(1+y^-1)^2 + x*y^2")
        assert exact_divide(f, LaurentPoly.monomial((0, 2))) == LaurentPoly.parse("(1+y^-1)^2 + x")

    def test_not_divisible(self):
        assert exact_divide(LaurentPoly.parse("1 + x + y"), LaurentPoly.parse("1 + x")) is None
        assert exact_divide(LaurentPoly.parse("1 + 3*x"), LaurentPoly.parse("2 + 2*x")) is None

    def test_zero_divisor(self):
        with pytest.raises(ZmlpError):
            exact_divide(LaurentPoly.one(), LaurentPoly.zero())

    @given(small_polys, small_polys)
    @settings(max_examples=60, deadline=None)
    def test_product_divides(self, g, h):
        assert exact_divide(g * h, h) == g


class TestCanonicalKey:
    def test_invariant_under_shear(self, tom):
        m = UnimodularAffineMap(((1, 2), (0, 1)), (4, -3))
        assert canonical_key(tom.substitute(m)) == canonical_key(tom)

    def test_distinguishes_tom_and_jerry(self, tom, jerry):
        assert tom.newton_polygon() == jerry.newton_polygon()
        assert canonical_key(tom) != canonical_key(jerry)
