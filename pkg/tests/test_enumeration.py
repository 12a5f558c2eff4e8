import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from math import gcd

from zmlp.classify.enumeration import count_comb, enumerate_comb
from zmlp.classify.families import FamilyLabel, classify_family, golden_table1, table1_rows
from zmlp.classify.reduce import is_base, triangular_certificate, triangular_reduce
from zmlp.core.laurent import LaurentPoly
from zmlp.divisibility.partition import exists_inequalities, square_sum
from zmlp.errors import ZmlpError
from zmlp.mutation.triangular import beta_pair, tau_pair

coprime = st.tuples(st.integers(1, 9), st.integers(1, 9)).filter(lambda ab: gcd(*ab) == 1)


class TestEnumerate:
    def test_two_three(self):
        assert enumerate_comb(2, 3) == [((1, 1), (2, 1)), ((2,), (1, 1, 1))]

    def test_unit_height(self):
        assert enumerate_comb(1, 4) == [((1,), (1, 1, 1, 1))]

    def test_count_matches_enumeration(self):
        assert count_comb(5, 101) == 11
        assert len(enumerate_comb(5, 101)) == 11
        assert count_comb(3, 7) == len(enumerate_comb(3, 7))

    def test_rejects_nonpositive(self):
        with pytest.raises(ZmlpError):
            enumerate_comb(0, 3)
        with pytest.raises(ZmlpError):
            count_comb(2, -1)

    @given(coprime)
    @settings(max_examples=30, deadline=None)
    def test_square_sum_identity(self, ab):
        a, b = ab
        pairs = enumerate_comb(a, b)
        assert len(pairs) == count_comb(a, b)
        for pa, pb in pairs:
            assert sum(pa) == a and sum(pb) == b
            assert square_sum(pa) + square_sum(pb) == a * b + 1
            assert exists_inequalities((pa, pb))

    @given(coprime)
    @settings(max_examples=30, deadline=None)
    def test_involutions(self, ab):
        a, b = ab
        for pair in enumerate_comb(a, b):
            assert tau_pair(tau_pair(pair)) == pair
            if pair[1] and max(pair[1]) < a:
                assert beta_pair(beta_pair(pair)) == pair


class TestFamilies:
    def test_three_seven(self):
        labels = [row.label for row in table1_rows(3, 7)]
        assert labels == [FamilyLabel.TOM, FamilyLabel.JERRY, FamilyLabel.SPIKE, FamilyLabel.TYKE]

    def test_four_five(self):
        rows = table1_rows(4, 5)
        assert [row.label for row in rows] == [FamilyLabel.TOM, FamilyLabel.JERRY, FamilyLabel.SPIKE]
        assert rows[2].pair == ((2, 2), (3, 2))

    def test_golden_rows(self):
        for a, b, expected in golden_table1():
            got = sorted((row.label.value, row.pair) for row in table1_rows(a, b))
            assert got == sorted(expected), (a, b)

    def test_table_rows_are_enumerated(self):
        for a, b, _ in golden_table1():
            pairs = set(enumerate_comb(a, b))
            for row in table1_rows(a, b):
                assert row.pair in pairs

    def test_classify(self):
        assert classify_family(((1, 1, 1), (2,)), 2, 3) == FamilyLabel.JERRY
        assert classify_family(((2, 1), (1, 1)), 2, 3) == FamilyLabel.TOM
        assert classify_family(((3, 2), (3, 3)), 5, 6) == FamilyLabel.SPIKE
        assert classify_family(((4, 1), (3, 3, 1)), 5, 7) == FamilyLabel.UNNAMED


class TestTriangularReduce:
    def test_tom(self):
        assert triangular_reduce(((1, 1), (2, 1))) == ["alpha_inv", "tau", "alpha_inv"]

    def test_base(self):
        assert is_base(((1,), (1,)))
        assert triangular_reduce(((1,), (1,))) == []

    def test_needs_nontriangular_mutation(self):
        assert triangular_reduce(((4, 1), (3, 3, 1))) is None
        assert triangular_certificate(((4, 1), (3, 3, 1))) is None

    @pytest.mark.parametrize("pair", [((1, 1), (2, 1)), ((2,), (1, 1, 1)), ((1,), (1, 1, 1))])
    def test_certificate_replays(self, pair):
        cert = triangular_certificate(pair)
        assert cert is not None
        assert cert.replay()
        assert cert.target.is_unit_monomial

    def test_reduce_every_small_pair(self):
        for a, b in [(2, 3), (2, 5), (3, 4), (3, 5)]:
            for pair in enumerate_comb(a, b):
                assert triangular_reduce(pair) is not None, pair

    def test_certificate_starts_from_reconstruction(self, tom):
        cert = triangular_certificate(((1, 1), (2, 1)))
        assert cert.source == tom
        assert cert.target == LaurentPoly.one()
