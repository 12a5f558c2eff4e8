from fractions import Fraction

import pytest
import sympy as sp

from zmlp.classify.families import golden_table1
from zmlp.core.lattice import triangle
from zmlp.errors import ConeError, NonCyclicQuotientError, ZmlpError
from zmlp.toric.cones import (
    Cone3,
    Fan3,
    central_subdivision,
    cone_over,
    dual_cone,
    fan_volume,
    parse_cone,
    polar_polygon_vertices,
    quotient_cone,
    star_subdivision,
    step_a_blowup,
    toric_degeneration,
)
from zmlp.toric.extraction import (
    SPIKE_REASON,
    base_case,
    ducat_sequence,
    extraction_certificate,
    extraction_cone,
    extraction_result,
)
from zmlp.toric.singularity import QuotientSingularity, sing_equivalent, singularity_type, standard_type
from zmlp.toric.walls import PRESET, U, Z, triangle_walls, wall_functions


class TestCones:
    def test_cone_over_triangle(self):
        sigma = cone_over(triangle(2, 3))
        assert set(sigma.generators) == {(0, 0, 1), (3, 0, 1), (0, 2, 1)}
        assert sigma.interior_contains((1, 1, 1))
        assert sigma.contains((0, 0, 1))
        assert not sigma.interior_contains((0, 0, 1))
        assert not sigma.contains((4, 0, 1))

    @pytest.mark.parametrize("a,b", [(2, 3), (3, 5), (1, 4)])
    def test_dual_rays(self, a, b):
        dual = dual_cone(cone_over(triangle(a, b)))
        assert set(dual.rays()) == {(1, 0, 0), (0, 1, 0), (-a, -b, a * b)}

    @pytest.mark.parametrize("a,b", [(2, 3), (3, 7), (4, 5)])
    def test_central_subdivision(self, a, b):
        fan = central_subdivision(dual_cone(cone_over(triangle(a, b))))
        assert len(fan) == 3
        assert sorted(fan.determinants()) == sorted([1, a, b])
        assert (0, 0, 1) in fan.rays()

    def test_center_must_be_interior(self):
        with pytest.raises(ConeError):
            central_subdivision(Cone3([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))

    def test_parse_cone(self):
        cone = parse_cone("1,0,0;0,1,0;1,-2,3")
        assert cone.det == 3
        with pytest.raises(ConeError):
            parse_cone("1,0;0,1,0;1,-2,3")

    def test_overlapping_cones_are_not_a_fan(self):
        with pytest.raises(ConeError):
            Fan3([quotient_cone(3, 2), Cone3([(1, 0, 0), (0, 1, 0), (1, -2, 3)])])

    def test_star_subdivision(self):
        fan = step_a_blowup(3, 2)
        assert len(fan) == 2
        assert {(1, 0, 0), (0, 1, 0), (1, -2, 3)} in [set(c.generators) for c in fan]
        again = star_subdivision(Fan3([quotient_cone(3, 2)]), (2, -4, 6))
        assert [set(c.generators) for c in again] == [set(c.generators) for c in fan]

    def test_star_outside_support(self):
        with pytest.raises(ConeError):
            star_subdivision(Fan3([quotient_cone(3, 2)]), (-1, 0, 0))

    def test_volume_is_preserved(self):
        fan = Fan3([quotient_cone(3, 2)])
        assert fan_volume(fan, (1, 1, 1)) == Fraction(3)
        assert fan_volume(step_a_blowup(3, 2), (1, 1, 1)) == Fraction(3)
        with pytest.raises(ConeError):
            fan_volume(fan, (1, -1, 0))

    def test_polar_polygon(self):
        vertices = polar_polygon_vertices(triangle(2, 3))
        assert set(vertices) == {(1, 0), (0, 1), (-2, -3)}

    def test_polar_needs_interior_point(self):
        with pytest.raises(ConeError):
            polar_polygon_vertices(triangle(1, 1))

    def test_toric_degeneration(self):
        deg = toric_degeneration(2, 3)
        assert sorted(t.r for t in deg.types) == [1, 2, 3]
        big = next(t for t in deg.types if t.r == 3)
        assert sing_equivalent(big, QuotientSingularity(3, (1, 2, 0)))
        assert not big.is_isolated
        data = deg.to_json()
        assert sorted(data["determinants"]) == [1, 2, 3]


class TestSingularity:
    def test_weights_reduced(self):
        s = QuotientSingularity(3, (1, -1, -1))
        assert s.weights == (1, 2, 2)
        assert s.is_isolated
        assert not s.is_smooth
        assert QuotientSingularity(1, (0, 0, 0)).is_smooth

    def test_invalid_order(self):
        with pytest.raises(ZmlpError):
            QuotientSingularity(0, (1, 1, 1))

    def test_equivalence(self):
        assert not sing_equivalent(QuotientSingularity(3, (1, -1, -1)), QuotientSingularity(3, (1, 1, 1)))
        for k in range(2, 8):
            assert sing_equivalent(QuotientSingularity(k, (1, -1, k + 1)), QuotientSingularity(k, (1, -1, 1)))
        assert not sing_equivalent(QuotientSingularity(2, (1, 1, 1)), QuotientSingularity(4, (1, 1, 1)))

    def test_equivalence_options(self):
        s, t = QuotientSingularity(5, (1, 2, 3)), QuotientSingularity(5, (2, 4, 1))
        assert sing_equivalent(s, t)
        assert not sing_equivalent(s, t, units=False)
        r = QuotientSingularity(5, (3, 2, 1))
        assert sing_equivalent(s, r, units=False)
        assert not sing_equivalent(s, r, units=False, permutations=False)

    def test_type_of_cones(self):
        s = singularity_type([(1, 0, 0), (0, 1, 0), (1, -2, 3)])
        assert s.r == 3
        assert s.normalized == (1, 1, 2)
        assert sing_equivalent(s, standard_type(3, 2))
        half = singularity_type([(0, 0, 1), (1, 0, 1), (1, 2, 2)])
        assert sing_equivalent(half, QuotientSingularity(2, (1, 1, 1)))
        assert singularity_type(Cone3([(1, 0, 0), (0, 1, 0), (0, 0, 1)])).is_smooth

    @pytest.mark.parametrize("a,b", [(2, 3), (3, 5), (5, 7)])
    def test_extraction_cone_has_standard_type(self, a, b):
        assert sing_equivalent(singularity_type(extraction_cone(a, b)), standard_type(a, b))

    def test_bad_cones(self):
        with pytest.raises(NonCyclicQuotientError):
            singularity_type([(2, 0, 0), (0, 2, 0), (0, 0, 1)])
        with pytest.raises(ConeError):
            singularity_type([(1, 0, 0), (2, 0, 0), (0, 0, 1)])
        with pytest.raises(ConeError):
            singularity_type([(1, 0, 0), (0, 1, 0)])


class TestWalls:
    def test_tom_generic(self):
        report = triangle_walls(((1, 1), (2, 1)))
        assert [w.name for w in report.walls] == ["D12", "D23", "D13"]
        c1, c2, a1, b1, b2 = sp.symbols("c1 c2 a1 b1 b2")
        d12, d23, d13 = report.walls
        assert d12.exponents == (2, 1)
        assert sp.expand(d12.expr - (U**2 - c1 * Z) * (U - c2 * Z)) == 0
        assert sp.expand(d23.expr - (U - a1 * Z)) == 0
        assert sp.expand(d13.expr - (U - b1 * Z) * (U - b2 * Z)) == 0
        assert report.closes
        assert report.degree_sum == report.perimeter == 6
        assert report.passed

    def test_tom_preset(self):
        d12, d23, d13 = triangle_walls(((1, 1), (2, 1)), "preset").walls
        assert sp.expand(d12.expr - U**2 * (U + Z)) == 0
        assert d23.expr == U
        assert sp.expand(d13.expr - U * (U + Z)) == 0
        assert PRESET["c3"] == 1

    def test_jerry(self):
        report = triangle_walls(((2,), (1, 1, 1)))
        assert report.walls[2].exponents == (2,)
        assert report.walls[0].degree == 3
        assert report.passed

    def test_explicit_values(self):
        d12 = triangle_walls(((1, 1), (2, 1)), {"c1": 5}).walls[0]
        c2 = sp.Symbol("c2")
        assert sp.expand(d12.expr - (U**2 - 5 * Z) * (U - c2 * Z)) == 0

    def test_wrong_input(self):
        with pytest.raises(ZmlpError):
            wall_functions(triangle(2, 3), [(2, 1), (1,)])
        with pytest.raises(ZmlpError):
            wall_functions(triangle(2, 3), [(2,), (1,), (1, 1)])
        with pytest.raises(ZmlpError):
            triangle_walls(((1, 1), (2, 1)), "bogus")

    def test_default_names(self):
        report = wall_functions(triangle(2, 3), [(2, 1), (1,), (1, 1)])
        assert [w.name for w in report.walls] == ["W0", "W1", "W2"]
        assert report.passed


class TestExtraction:
    def test_ducat_sequence(self):
        assert ducat_sequence(1, 1) == ([0, 1, 1], 1, 2)
        assert ducat_sequence(2, 1) == ([0, 1, 2], 1, 3)
        assert ducat_sequence(1, 2) == ([0, 1, 1, 0], 2, 1)
        assert ducat_sequence(3, 2)[0] == [0, 1, 3, 8]
        with pytest.raises(ZmlpError):
            ducat_sequence(0, 1)

    def test_base_cases(self):
        assert base_case(((1,), (1, 1, 1)))[0] == "A_n"
        name, sing = base_case(((1, 1, 1), (1,)))
        assert name == "Tom"
        assert sing == QuotientSingularity(3, (1, -1, -1))
        assert base_case(((2,), (1, 1, 1)))[0].startswith("Ducat")
        assert base_case(((2, 2), (3, 2))) is None

    def test_tom(self):
        cert = extraction_certificate(((1, 1), (2, 1)), 2, 3)
        assert cert.variant == 1
        assert cert.moves == ["alpha_inv"]
        assert cert.base == "Tom"
        assert cert.base_pair == ((1, 1), (1,))
        assert cert.chain == [((1, 1), (2, 1)), ((1, 1), (1,))]
        assert cert.consistent
        assert cert.to_json()["consistent"]

    def test_jerry_is_ducat(self):
        cert = extraction_certificate(((2,), (1, 1, 1)), 2, 3)
        assert cert.moves == []
        assert cert.base.startswith("Ducat")
        assert cert.consistent

    def test_spike_has_no_certificate(self):
        result = extraction_result(((2, 2), (3, 2)), 4, 5)
        assert result.certificate is None
        assert result.reason == SPIKE_REASON
        assert result.to_json()["certificate"] is None

    def test_tyke_rows(self):
        cert = extraction_certificate(((3,), (2, 2, 2, 1)), 3, 7)
        assert cert.moves == ["beta"]
        assert cert.base == "Tyke"
        assert cert.consistent
        assert extraction_certificate(((3,), (2, 1, 1, 1)), 3, 5).moves == []

    @pytest.mark.parametrize("a,b,rows", golden_table1())
    def test_table1_rows(self, a, b, rows):
        for label, pair in rows:
            result = extraction_result(pair, a, b)
            if label == "Spike":
                assert result.certificate is None
                assert result.reason == SPIKE_REASON
                continue
            cert = result.certificate
            assert cert is not None, (label, pair)
            assert cert.consistent
            assert sing_equivalent(cert.singularity, standard_type(a, b))

    def test_degree_mismatch(self):
        with pytest.raises(ZmlpError):
            extraction_result(((1, 1), (2, 1)), 3, 2)
