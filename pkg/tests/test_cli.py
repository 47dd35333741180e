import csv
import json
import pytest
import numpy as np

from kcenter.cli import main, EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_GUARD, EXIT_NUMERICAL
from conftest import SQUARE, LINE

EUCLIDEAN = {"kind": "euclidean"}


def value_of(out, key):
    for token in out.split():
        if token.startswith(key + "="):
            return token[len(key) + 1:]
    raise AssertionError("%s not in %r" % (key, out))


class TestValidate:
    def test_square(self, write_instance, capsys):
        path = write_instance("square", SQUARE, EUCLIDEAN)
        assert main(["validate", "--instance", path]) == EXIT_OK
        out = capsys.readouterr().out
        assert "m=4 d=2 gauge=euclidean" in out
        assert float(value_of(out, "norm_F")) == 1.0

    def test_missing_file(self, tmp_path, capsys):
        assert main(["validate", "--instance", str(tmp_path / "nope.json")]) == EXIT_PARSE
        assert "parse error" in capsys.readouterr().err

    def test_ragged_points(self, write_instance, capsys):
        path = write_instance("ragged", [[0, 0], [1]], EUCLIDEAN, 2)
        assert main(["validate", "--instance", path]) == EXIT_PARSE
        assert "parse error" in capsys.readouterr().err

    def test_duplicate_points(self, write_instance, capsys):
        path = write_instance("dup", [[0, 0], [0, 0]], EUCLIDEAN)
        assert main(["validate", "--instance", path]) == EXIT_VALIDATION
        assert "1 and 2" in capsys.readouterr().err

    def test_unbounded_gauge(self, write_instance):
        path = write_instance("open", SQUARE, {"kind": "halfspaces", "normals": [[1, 0], [0, 1]]})
        assert main(["validate", "--instance", path]) == EXIT_VALIDATION

    def test_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main(["solve"])
        assert info.value.code == 2


class TestSolve:
    def test_exact(self, write_instance, tmp_path, capsys):
        path = write_instance("square", SQUARE, EUCLIDEAN)
        out_path = str(tmp_path / "r.json")
        assert main(["solve", "--instance", path, "--k", "3", "--out", out_path]) == EXIT_OK
        assert float(value_of(capsys.readouterr().out, "value")) == pytest.approx(0.5)
        with open(out_path) as f:
            report = json.load(f)
        assert report["kind"] == "solve"
        assert report["instance"] == "square"
        assert report["k"] == 3
        assert report["elapsed_ms"] is None
        assert report["result"]["method"] == "exact_partition"
        assert len(report["result"]["partition"]) == 3

    def test_heuristic(self, write_instance, capsys):
        path = write_instance("line", LINE, EUCLIDEAN, 1)
        assert main(["solve", "--instance", path, "--k", "2", "--method", "heuristic", "--seed", "3"]) == EXIT_OK
        assert float(value_of(capsys.readouterr().out, "value")) == pytest.approx(0.5)

    def test_guard(self, write_instance, capsys):
        pts = np.random.default_rng(0).uniform(0, 1, size=(15, 2)).tolist()
        path = write_instance("big", pts, EUCLIDEAN)
        assert main(["solve", "--instance", path, "--k", "2"]) == EXIT_GUARD
        assert "too large" in capsys.readouterr().err

    def test_bad_k(self, write_instance):
        path = write_instance("square", SQUARE, EUCLIDEAN)
        assert main(["solve", "--instance", path, "--k", "0"]) == EXIT_VALIDATION

    def test_workers_do_not_change_report(self, write_instance, tmp_path, monkeypatch):
        pts = np.random.default_rng(4).uniform(0, 1, size=(8, 2)).tolist()
        path = write_instance("pts", pts, EUCLIDEAN)
        texts = []
        for workers in ("1", "3"):
            monkeypatch.setenv("KCENTER_WORKERS", workers)
            out_path = str(tmp_path / ("w%s.json" % workers))
            assert main(["solve", "--instance", path, "--k", "3", "--out", out_path]) == EXIT_OK
            with open(out_path) as f:
                texts.append(f.read())
        assert texts[0] == texts[1]


class TestOneCenter:
    def test_square(self, write_instance, capsys):
        path = write_instance("square", SQUARE, EUCLIDEAN)
        assert main(["one-center", "--instance", path]) == EXIT_OK
        out = capsys.readouterr().out
        assert float(value_of(out, "radius")) == pytest.approx(0.5 ** 0.5)


class TestCertify:
    def test_line(self, write_instance, tmp_path, capsys):
        path = write_instance("line", LINE, EUCLIDEAN, 1)
        out_path = str(tmp_path / "c.json")
        assert main(["certify", "--instance", path, "--centers", "[5, 30]", "--out", out_path]) == EXIT_OK
        assert value_of(capsys.readouterr().out, "verdict") == "certified_local"
        with open(out_path) as f:
            result = json.load(f)["result"]
        assert result["stability_radius"] == pytest.approx(7.5)
        assert result["clustering"]["attraction"] == [[1, 2, 3], []]

    def test_bad_centers(self, write_instance):
        path = write_instance("line", LINE, EUCLIDEAN, 1)
        assert main(["certify", "--instance", path, "--centers", "[5,"]) == EXIT_PARSE

    def test_wrong_dimension(self, write_instance):
        path = write_instance("square", SQUARE, EUCLIDEAN)
        assert main(["certify", "--instance", path, "--centers", "[[1, 2, 3]]"]) == EXIT_VALIDATION


class TestCompactness:
    def test_square(self, write_instance, capsys):
        path = write_instance("square", SQUARE, EUCLIDEAN)
        assert main(["compactness", "--instance", path, "--k", "3"]) == EXIT_OK
        assert value_of(capsys.readouterr().out, "verdict") == "noncompact"

    def test_hypothesis(self, write_instance):
        path = write_instance("square", SQUARE, EUCLIDEAN)
        assert main(["compactness", "--instance", path, "--k", "4"]) == EXIT_VALIDATION


class TestProbe:
    def test_improvement(self, write_instance, capsys):
        path = write_instance("pair", [[0], [1]], EUCLIDEAN, 1)
        args = ["probe", "--instance", path, "--centers", "[0.5, 0.5]", "--radius", "0.4", "--samples", "200"]
        assert main(args) == EXIT_OK
        assert value_of(capsys.readouterr().out, "verdict") == "improvement_found"

    def test_bad_radius(self, write_instance):
        path = write_instance("pair", [[0], [1]], EUCLIDEAN, 1)
        args = ["probe", "--instance", path, "--centers", "[0.5, 0.5]", "--radius", "0"]
        assert main(args) == EXIT_VALIDATION


class TestBound2:
    def test_euclidean(self, write_instance, capsys):
        path = write_instance("square", SQUARE, EUCLIDEAN)
        assert main(["bound2", "--instance", path]) == EXIT_OK
        out = capsys.readouterr().out
        assert float(value_of(out, "bound")) < float(value_of(out, "r1"))

    def test_interval(self, write_instance, capsys):
        path = write_instance("asym", [[0], [3], [5]], {"kind": "interval", "a": -2, "b": 1}, 1)
        assert main(["bound2", "--instance", path]) == EXIT_OK
        assert float(value_of(capsys.readouterr().out, "bound")) == pytest.approx(2.0 / 3.0)

    def test_single_point(self, write_instance, capsys):
        path = write_instance("one", [[1.0, 2.0]], EUCLIDEAN)
        assert main(["bound2", "--instance", path]) == EXIT_NUMERICAL
        assert "numerical failure" in capsys.readouterr().err

    def test_unsupported_gauge(self, write_instance):
        path = write_instance("square", SQUARE, {"kind": "linf"})
        assert main(["bound2", "--instance", path]) == EXIT_VALIDATION


class TestGenAndCsv:
    def test_gen_is_seeded(self, tmp_path, capsys):
        a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
        assert main(["gen", "--m", "6", "--d", "2", "--seed", "5", "--out", a]) == EXIT_OK
        assert main(["gen", "--m", "6", "--d", "2", "--seed", "5", "--out", b]) == EXIT_OK
        with open(a) as fa, open(b) as fb:
            assert fa.read() == fb.read()
        assert main(["validate", "--instance", a]) == EXIT_OK
        assert "m=6 d=2" in capsys.readouterr().out

    def test_gen_rejects(self, tmp_path):
        out = str(tmp_path / "x.json")
        assert main(["gen", "--m", "0", "--d", "2", "--out", out]) == EXIT_VALIDATION
        assert main(["gen", "--m", "3", "--d", "2", "--low", "1", "--high", "1", "--out", out]) == EXIT_VALIDATION
        assert main(["gen", "--m", "3", "--d", "2", "--gauge", "{bad", "--out", out]) == EXIT_PARSE

    def test_emit_csv(self, write_instance, tmp_path, capsys):
        path = write_instance("square", SQUARE, EUCLIDEAN)
        r1, r2 = str(tmp_path / "r1.json"), str(tmp_path / "r2.json")
        assert main(["solve", "--instance", path, "--k", "2", "--out", r1]) == EXIT_OK
        assert main(["compactness", "--instance", path, "--k", "2", "--out", r2]) == EXIT_OK
        csv_path = str(tmp_path / "all.csv")
        capsys.readouterr()
        assert main(["emit-csv", r1, r2, "--out", csv_path]) == EXIT_OK
        assert value_of(capsys.readouterr().out, "rows") == "2"
        with open(csv_path, newline="") as f:
            rows = list(csv.DictReader(f))
        assert [row["kind"] for row in rows] == ["solve", "compactness"]
        assert rows[1]["verdict"] == "compact"
        assert rows[0]["verdict"] == ""

    def test_emit_csv_bad_report(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("[]")
        assert main(["emit-csv", str(bad), "--out", str(tmp_path / "x.csv")]) == EXIT_PARSE
