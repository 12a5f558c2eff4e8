import os

import pandas as pd
import pytest

from zmlp.classify.engine import COLUMNS, MAX_LIMIT, VerificationEngine, _verify_triangle
from zmlp.classify.enumeration import count_comb
from zmlp.classify.table2 import Table2Model, golden_left, golden_right
from zmlp.errors import ZmlpError
from zmlp.utils.comb_cache import CombCache


class TestVerificationEngine:
    def test_small_range_passes(self):
        result = VerificationEngine(limit=5).add_range().run()
        assert result["passed"]
        assert result["failures"] == []
        df = result["rows"]
        assert list(df.columns) == COLUMNS
        assert set(df["status"]) == {"pass"}
        assert ((df["a"] + df["b"]) <= 5).all()

    def test_range_eleven_passes(self):
        result = VerificationEngine(limit=11).add_range().run()
        assert result["passed"], result["failures"]
        df = result["rows"]
        assert df["reconstructed"].all()
        assert (df["status"] != "fail").all()

    def test_chained_triangles(self):
        engine = VerificationEngine(limit=5).add_triangle(2, 3).add_triangle(2, 3)
        df = engine.run()["rows"]
        assert sorted(df["pair"]) == ["(1,1),(2,1)", "(2),(1,1,1)"]
        assert df["replayed"].all()

    def test_nontriangular_pair_is_flagged(self):
        rows = {row["pair"]: row for row in _verify_triangle((5, 7, False, 10, 5000))}
        row = rows["(4,1),(3,3,1)"]
        assert row["status"] == "flagged"
        assert row["reconstructed"]
        assert not row["triangular"]
        assert not row["searched"]

    def test_search_verified_pair(self):
        rows = {row["pair"]: row for row in _verify_triangle((5, 7, True, 10, 5000))}
        row = rows["(4,1),(3,3,1)"]
        assert row["status"] == "searched"
        assert row["searched"]
        assert row["replayed"]
        assert row["moves"] == "search"
        assert all(r["status"] != "fail" for r in rows.values())

    def test_searched_rows_are_reported(self):
        result = VerificationEngine(limit=12, search_nontriangular=True).add_triangle(5, 7).run()
        assert result["passed"]
        assert result["failures"] == []
        assert (5, 7, "(4,1),(3,3,1)") in result["searched"]
        assert (5, 7, "(4,1),(3,3,1)") not in result["flagged"]

    def test_flagged_is_not_failure(self):
        result = VerificationEngine(limit=12).add_triangle(5, 7).run()
        assert result["passed"]
        assert (5, 7, "(4,1),(3,3,1)") in result["flagged"]

    def test_limit_bound(self):
        with pytest.raises(ZmlpError):
            VerificationEngine(limit=MAX_LIMIT + 1)
        with pytest.raises(ZmlpError):
            VerificationEngine(limit=5).add_range(MAX_LIMIT + 1)
        with pytest.raises(ZmlpError):
            VerificationEngine(jobs=0)
        with pytest.raises(ZmlpError):
            VerificationEngine().add_triangle(0, 3)


class TestTable2:
    def test_golden_values(self):
        assert [golden_left(a, 1) for a in range(2, 7)] == [2, 4, 8, 11, 15]
        assert golden_left(1, 0) == 1
        assert golden_left(7, 3) == 31
        assert golden_left(7, 1) == 28
        assert [golden_right(k) for k in range(1, 5)] == [3, 3, 6, 15]

    def test_small_model(self):
        result = Table2Model(a_max=3, k_max=1, scan=30, right_a_max=20).run()
        assert result["passed"], result["mismatches"]
        left = result["left"]
        assert list(left.columns) == ["a", "residue", "count", "stable", "b_max"]
        assert left["stable"].all()
        assert list(left["count"]) == [1, 2, 4, 4]
        assert list(result["right"]["count"]) == [3]

    def test_full_left_table(self):
        left = Table2Model(a_max=7, k_max=0).left_table()
        for row in left.itertuples(index=False):
            assert row.count == golden_left(row.a, row.residue), (row.a, row.residue)

    def test_invalid_arguments(self):
        with pytest.raises(ZmlpError):
            Table2Model(a_max=0)
        with pytest.raises(ZmlpError):
            Table2Model(k_max=-1)
        with pytest.raises(ZmlpError):
            Table2Model(scan=0)

    def test_cached_counts_agree(self, comb_cache):
        plain = Table2Model(a_max=2, k_max=1, scan=10, right_a_max=10).run()
        cached = Table2Model(a_max=2, k_max=1, scan=10, right_a_max=10, use_cache=True).run()
        pd.testing.assert_frame_equal(plain["left"], cached["left"])
        pd.testing.assert_frame_equal(plain["right"], cached["right"])


class TestCombCache:
    def test_singleton(self, comb_cache):
        assert CombCache() is comb_cache

    def test_get_count_writes_parquet(self, comb_cache, tmp_path):
        assert comb_cache.get_count(2, 3) == 2
        path = tmp_path / "2" / "counts.parquet"
        assert path.exists()
        df = pd.read_parquet(path)
        assert df.to_dict(orient="records") == [{"a": 2, "b": 3, "count": 2}]

    def test_reload_from_disk(self, comb_cache, tmp_path):
        comb_cache.get_count(3, 7)
        CombCache._instance = None
        fresh = CombCache()
        assert fresh is not comb_cache
        assert fresh.cache_dir == str(tmp_path)
        fresh._load(3)
        assert fresh._memory[(3, 7)] == count_comb(3, 7)

    def test_get_counts(self, comb_cache):
        series = comb_cache.get_counts(2, [3, 5, 7])
        assert series.name == "count"
        assert series.dtype == "int64"
        assert list(series.index) == [3, 5, 7]
        assert list(series) == [2, 2, 2]

    def test_clear_keeps_files(self, comb_cache, tmp_path):
        comb_cache.get_count(2, 5)
        comb_cache.clear()
        assert comb_cache._memory == {}
        assert os.path.exists(tmp_path / "2" / "counts.parquet")
        assert comb_cache.get_count(2, 5) == 2
