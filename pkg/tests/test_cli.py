import json
from argparse import Namespace

import pytest

from zmlp.cli.config import RunConfig
from zmlp.cli.io import figure_poly, poly_from_data, read_json, write_json
from zmlp.cli.main import EXIT_ERROR, EXIT_MISMATCH, EXIT_OK, main
from zmlp.core.laurent import LaurentPoly
from zmlp.errors import ZmlpError


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


class TestClassifyCommands:
    def test_enum_json(self, capsys):
        assert main(["enum", "--a", "2", "--b", "3", "--json"]) == EXIT_OK
        data = _json_out(capsys)
        assert data["count"] == 2
        assert data["pairs"] == [[[1, 1], [2, 1]], [[2], [1, 1, 1]]]

    def test_enum_text(self, capsys):
        assert main(["enum", "--a", "3", "--b", "7"]) == EXIT_OK
        assert "ZMLP_comb(3,7)" in capsys.readouterr().out

    def test_enum_bad_input(self, capsys):
        assert main(["enum", "--a", "0", "--b", "3"]) == EXIT_ERROR
        assert "错误" in capsys.readouterr().err

    def test_classify(self, capsys):
        assert main(["classify", "--a", "5", "--b", "7", "--json"]) == EXIT_OK
        rows = {row["text"]: row for row in _json_out(capsys)["rows"]}
        assert not rows["(4,1),(3,3,1)"]["triangular"]
        assert rows["(4,1),(3,3,1)"]["moves"] is None

    def test_table1(self, capsys):
        assert main(["table1", "--k", "5", "--json"]) == EXIT_OK
        data = _json_out(capsys)
        assert data["passed"]
        assert {(t["a"], t["b"]) for t in data["triangles"]} >= {(2, 5), (3, 5), (5, 6)}

    def test_verify_small(self, capsys):
        assert main(["verify-small", "--limit", "5", "--json"]) == EXIT_OK
        data = _json_out(capsys)
        assert data["passed"]
        assert data["failures"] == []

    def test_verify_small_limit(self):
        assert main(["verify-small", "--limit", "14"]) == EXIT_ERROR


class TestVerifyCommand:
    def test_tom(self, capsys, tmp_path, figures):
        path = write_json(figures["tom"], tmp_path / "tom.json")
        assert main(["verify", "--poly", str(path), "--json"]) == EXIT_OK
        data = _json_out(capsys)
        assert data["replayed"]
        assert data["certificate"] is not None

    def test_plot(self, tmp_path, figures):
        path = write_json(figures["tom"], tmp_path / "tom.json")
        png = tmp_path / "tom.png"
        assert main(["verify", "--poly", str(path), "--plot", str(png)]) == EXIT_OK
        assert png.stat().st_size > 0

    def test_not_zero_mutable(self, capsys, tmp_path):
        path = write_json({"poly": "1 + 2*x + y"}, tmp_path / "f.json")
        assert main(["verify", "--poly", str(path), "--nodes", "200"]) == EXIT_MISMATCH

    def test_missing_file(self, tmp_path):
        assert main(["verify", "--poly", str(tmp_path / "nope.json")]) == EXIT_ERROR


class TestGraphCommand:
    def test_dot_file(self, capsys, tmp_path):
        path = tmp_path / "g.dot"
        assert main(["graph", "--max-size", "1", "--dot", str(path)]) == EXIT_OK
        assert path.exists()
        assert "graph" in path.read_text(encoding="utf-8")

    def test_json_and_dot_conflict(self, tmp_path):
        assert main(["graph", "--json", "--dot", str(tmp_path / "g.dot")]) == EXIT_ERROR

    def test_jobs_env(self, monkeypatch):
        monkeypatch.setenv("ZMLP_JOBS", "abc")
        assert main(["graph", "--max-size", "0"]) == EXIT_ERROR


class TestToricCommands:
    def test_sing(self, capsys):
        assert main(["sing", "--cone", "1,0,0;0,1,0;1,-2,3", "--json"]) == EXIT_OK
        data = _json_out(capsys)
        assert data["type"]["r"] == 3
        assert data["type"]["normalized"] == [1, 1, 2]

    def test_toric(self, capsys):
        assert main(["toric", "--a", "2", "--b", "3", "--json"]) == EXIT_OK
        data = _json_out(capsys)
        assert sorted(data["determinants"]) == [1, 2, 3]
        assert len(data["step_a"]["types"]) == 2

    def test_walls_pair(self, capsys):
        assert main(["walls", "--pair", "1,1|2,1", "--json"]) == EXIT_OK
        data = _json_out(capsys)
        assert data["passed"]
        assert [w["name"] for w in data["walls"]] == ["D12", "D23", "D13"]

    def test_walls_poly(self, capsys, tmp_path, figures):
        path = write_json(figures["jerry"], tmp_path / "jerry.json")
        assert main(["walls", "--poly", str(path), "--preset"]) == EXIT_OK
        assert "闭合条件" in capsys.readouterr().out

    def test_walls_needs_input(self):
        assert main(["walls"]) == EXIT_ERROR

    def test_extract_pair(self, capsys):
        assert main(["extract", "--a", "2", "--b", "3", "--pair", "1,1|2,1", "--json"]) == EXIT_OK
        data = _json_out(capsys)
        assert len(data["results"]) == 1
        cert = data["results"][0]["certificate"]
        assert cert["base"] == "Tom"
        assert cert["consistent"]

    def test_extract_printed_pair(self, capsys):
        assert main(["extract", "--a", "2", "--b", "3", "--pair", "(1,1),(2,1)", "--json"]) == EXIT_OK
        cert = _json_out(capsys)["results"][0]["certificate"]
        assert cert["pair"] == "(1,1),(2,1)"
        assert cert["base"] == "Tom"

    def test_extract_spike(self, capsys):
        assert main(["extract", "--a", "4", "--b", "5"]) == EXIT_OK
        assert "Spike" in capsys.readouterr().out


class TestRunConfig:
    def test_validation(self):
        with pytest.raises(ZmlpError):
            RunConfig("verify", depth=0)
        with pytest.raises(ZmlpError):
            RunConfig("graph", max_size=-1)
        with pytest.raises(ZmlpError):
            RunConfig("graph", output_format="xml")

    def test_from_args(self, monkeypatch):
        monkeypatch.delenv("ZMLP_JOBS", raising=False)
        args = Namespace(command="graph", json=False, dot="g.dot", jobs=2, max_size=2, measure="points",
                         include_products=True, verbose=False)
        cfg = RunConfig.from_args(args)
        assert cfg.output_format == "dot"
        assert cfg.output_path == "g.dot"
        assert cfg.jobs == 2
        assert cfg.include_products
        assert cfg.options == {"measure": "points"}

    def test_env_jobs_wins(self, monkeypatch):
        monkeypatch.setenv("ZMLP_JOBS", "3")
        cfg = RunConfig.from_args(Namespace(command="graph", jobs=1))
        assert cfg.jobs == 3


class TestIO:
    def test_poly_formats(self, tom, figures):
        assert poly_from_data(figures["tom"]) == tom
        assert poly_from_data("(1+x)^3 + 2*y*(1+x) + y^2") == tom
        assert poly_from_data({"poly": "1 + x"}) == LaurentPoly.parse("1 + x")
        assert poly_from_data(tom.to_json()) == tom
        assert poly_from_data({"rows": [[1, 1]], "y0": 2}) == LaurentPoly.parse("y^2 + x*y^2")

    def test_poly_rejects(self):
        with pytest.raises(ZmlpError):
            poly_from_data({"vertices": []})
        with pytest.raises(ZmlpError):
            poly_from_data(3)

    def test_read_json_errors(self, tmp_path):
        with pytest.raises(ZmlpError):
            read_json(tmp_path / "missing.json")
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        with pytest.raises(ZmlpError):
            read_json(bad)

    def test_unknown_figure(self):
        with pytest.raises(ZmlpError):
            figure_poly("chains")
        with pytest.raises(ZmlpError):
            figure_poly("nope")
