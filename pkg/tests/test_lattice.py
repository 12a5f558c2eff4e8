import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zmlp.core.lattice import (
    AffineFunctional,
    UnimodularAffineMap,
    boundary_closes,
    box_size,
    canonical_form,
    classify_rectangular,
    convex_hull,
    lattice_point_count,
    lattice_points,
    polygon_from_json,
    polygon_key,
    polygon_to_json,
    standard_triangle,
    triangle,
)
from zmlp.errors import NotTriangularError, ZmlpError

GENERATORS = [
    UnimodularAffineMap(((0, 1), (1, 0))),
    UnimodularAffineMap(((1, 1), (0, 1))),
    UnimodularAffineMap(((1, 0), (-1, 1))),
    UnimodularAffineMap(((1, 0), (0, -1))),
]

points = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=7)
unimodular = st.builds(
    lambda word, t: _word_map(word, t),
    st.lists(st.integers(0, len(GENERATORS) - 1), max_size=6),
    st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
)


def _word_map(word, t):
    m = UnimodularAffineMap.identity()
    for i in word:
        m = GENERATORS[i].compose(m)
    return UnimodularAffineMap.translate(t).compose(m)


class TestConvexHull:
    def test_interior_point_dropped(self):
        poly = convex_hull([(0, 0), (3, 0), (0, 2), (1, 1)])
        assert poly.vertices == ((0, 0), (3, 0), (0, 2))
        assert poly.dim == 2

    def test_collinear_points_give_segment(self):
        poly = convex_hull([(0, 0), (1, 0), (2, 0)])
        assert poly.vertices == ((0, 0), (2, 0))
        assert poly.dim == 1
        assert len(poly.edges) == 2

    def test_single_point(self):
        poly = convex_hull([(4, -1)])
        assert poly.dim == 0
        assert poly.edges == ()

    def test_empty_raises(self):
        with pytest.raises(ZmlpError):
            convex_hull([])

    def test_edges_of_standard_triangle(self):
        edges = triangle(2, 3).edges
        assert [e.normal for e in edges] == [(0, 1), (-2, -3), (1, 0)]
        assert [e.length for e in edges] == [3, 1, 2]
        assert edges[0].level((1, 1)) == 1


class TestLatticePoints:
    def test_counts(self):
        assert lattice_point_count(triangle(2, 3)) == 7
        assert lattice_point_count(triangle(5, 7)) == 25
        assert lattice_points(convex_hull([(0, 0), (0, 2)])) == [(0, 0), (0, 1), (0, 2)]

    def test_contains(self):
        poly = triangle(2, 3)
        assert poly.contains((1, 1))
        assert not poly.contains((2, 1))


class TestRectangular:
    def test_classify_rectangular(self):
        poly = convex_hull([(0, 0), (3, 0), (0, 2)])
        a, b, m = classify_rectangular(poly)
        assert (a, b) == (2, 3)
        assert m.apply_polygon(poly) == convex_hull([(0, 0), (2, 0), (0, 3)])

    def test_unit_triangle_uses_identity(self):
        a, b, m = classify_rectangular(triangle(1, 1))
        assert (a, b) == (1, 1)
        assert m == UnimodularAffineMap.identity()

    def test_not_rectangular(self):
        assert classify_rectangular(convex_hull([(0, 0), (2, 0), (1, 2)])) is None

    def test_standard_triangle_keeps_standard_position(self):
        a, b, m = standard_triangle(triangle(5, 7))
        assert (a, b) == (5, 7)
        assert m == UnimodularAffineMap.identity()

    def test_standard_triangle_after_shear(self):
        shear = UnimodularAffineMap(((1, 1), (0, 1)), (2, -1))
        moved = shear.apply_polygon(triangle(2, 3))
        a, b, m = standard_triangle(moved)
        assert {a, b} == {2, 3}
        assert m.apply_polygon(moved) == triangle(a, b)

    def test_standard_triangle_rejects(self):
        with pytest.raises(NotTriangularError):
            standard_triangle(convex_hull([(0, 0), (1, 0), (1, 1), (0, 1)]))


class TestCanonicalForm:
    def test_point_and_segment(self):
        assert canonical_form(convex_hull([(3, 4)])).vertices == ((0, 0),)
        assert canonical_form(convex_hull([(1, 1), (3, 5)])).vertices == ((0, 0), (2, 0))

    def test_box_size(self):
        assert box_size(triangle(2, 3)) == 3
        assert box_size(convex_hull([(0, 0)])) == 0
        assert box_size(convex_hull([(0, 0), (1, 0)])) == 1

    @given(points, unimodular)
    @settings(max_examples=60, deadline=None)
    def test_key_invariant_under_unimodular_maps(self, pts, m):
        poly = convex_hull(pts)
        assert polygon_key(m.apply_polygon(poly)) == polygon_key(poly)

    @given(points)
    @settings(max_examples=60, deadline=None)
    def test_closing_condition(self, pts):
        assert boundary_closes(convex_hull(pts))


def test_unimodular_map_rejects_degenerate_matrix():
    with pytest.raises(ZmlpError):
        UnimodularAffineMap(((2, 0), (0, 1)))


def test_inverse_map():
    m = UnimodularAffineMap(((2, 1), (1, 1)), (3, -2))
    assert m.inverse().compose(m) == UnimodularAffineMap.identity()


def test_affine_functional():
    phi = AffineFunctional((0, 2), -3)
    assert phi((5, 1)) == -1
    assert (-phi)((5, 1)) == 1
    assert AffineFunctional.from_dict(phi.to_dict()) == phi
    assert AffineFunctional((0, 0), 4).is_constant


def test_polygon_json():
    poly = triangle(2, 3)
    assert polygon_from_json(polygon_to_json(poly)) == poly
