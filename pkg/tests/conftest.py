import pytest

from zmlp.cli.io import figure_poly, load_figures
from zmlp.core.laurent import LaurentPoly
from zmlp.utils.comb_cache import CombCache


@pytest.fixture(scope="session")
def figures():
    return load_figures()


@pytest.fixture
def tom():
    return figure_poly("tom")


@pytest.fixture
def jerry():
    return figure_poly("jerry")


@pytest.fixture
def reqdiv_gap():
    """△(5,7) 上 (4,1),(3,3,1) 对应的多项式"""
    return figure_poly("reqdiv_gap")


@pytest.fixture
def one():
    return LaurentPoly.one()


@pytest.fixture
def comb_cache(tmp_path, monkeypatch):
    """指向临时目录的全新 CombCache"""
    monkeypatch.setenv("ZMLP_CACHE_DIR", str(tmp_path))
    CombCache._instance = None
    cache = CombCache()
    yield cache
    CombCache._instance = None
