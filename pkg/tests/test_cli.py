import csv
import io
import math

import numpy as np
import pytest

from ratbez import cli
from ratbez.curvedoc import load_fixture, parse_document, read_document

CONSTANT = """name: flat
segment
dimension: 2
degree: 3
weights: 1 2 3 1
points:
1.5 -2
1.5 -2
1.5 -2
1.5 -2
"""


def report_values(text):
    pieces, cur = [], None
    for line in text.splitlines():
        key, _, val = line.partition(": ")
        if key == "piece":
            cur = {}
            pieces.append(cur)
        elif cur is not None and key:
            cur[key] = val
    return pieces


def third_digit(x, ref):
    """|x - ref| within one unit of the third significant digit of ``ref``."""
    unit = 10.0 ** (math.floor(math.log10(abs(ref))) - 2)
    return abs(x - ref) <= unit


class TestRun:
    def test_dual_example(self, capsys, tmp_path):
        out, pic = tmp_path / "out.curve", tmp_path / "out.svg"
        code = cli.main(["run", "fixture:closed8", "--degree", "10", "--out", str(out), "--svg", str(pic)], env={})
        assert code == 0
        vals = report_values(capsys.readouterr().out)[0]
        assert float(vals["e_inf"]) == pytest.approx(0.664, rel=1e-2)
        assert float(vals["e_2"]) == pytest.approx(0.167, rel=1e-2)
        assert int(vals["chebyshev_M"]) >= 32 and float(vals["wall_time_s"]) >= 0
        doc = read_document(out)
        assert doc.segments[0].degree == 10 and doc.meta["method"] == "dual"
        svg = pic.read_text()
        assert svg.startswith("<svg") and svg.count("<polyline") == 2 and "stroke-dasharray" in svg

    def test_huang_example(self, capsys):
        assert cli.main(["run", "fixture:closed8", "--degree", "10", "--method", "huang"], env={}) == 0
        vals = report_values(capsys.readouterr().out)[0]
        assert float(vals["e_inf"]) == pytest.approx(9.41, rel=1e-2) and vals["elevation"] == "2"

    def test_lu_reports_metadata(self, capsys):
        argv = ["run", "fixture:open9", "--degree", "10", "--method", "lu", "--lu-iters", "20", "--lu-lambda", "1.5"]
        assert cli.main(argv, env={}) == 0
        vals = report_values(capsys.readouterr().out)[0]
        assert vals["lu_iters"] == "20" and float(vals["lu_lambda"]) == 1.5 and vals["lu_nodes"] == "uniform"

    def test_constant_curve(self, tmp_path, capsys):
        src = tmp_path / "flat.curve"
        src.write_text(CONSTANT)
        out = tmp_path / "approx.curve"
        assert cli.main(["run", str(src), "--degree", "3", "--out", str(out)], env={}) == 0
        vals = report_values(capsys.readouterr().out)[0]
        assert float(vals["e_inf"]) < 1e-12 and float(vals["e_2"]) < 1e-12
        np.testing.assert_allclose(read_document(out).segments[0].control_points, [[1.5, -2.0]] * 4, atol=1e-12)

    def test_composite_with_subdivision(self, capsys):
        argv = ["run", "fixture:sketch88", "--degree", "12,11,7,6", "--k", "2", "--l", "2",
                "--alpha", "0.5", "--beta", "0.5", "--subdivide", "0.5"]
        assert cli.main(argv, env={}) == 0
        assert len(report_values(capsys.readouterr().out)) == 4

    def test_deterministic_output(self, tmp_path, capsys):
        outs, reports = [], []
        for i in range(2):
            out = tmp_path / f"o{i}.curve"
            assert cli.main(["run", "fixture:open9", "--degree", "9", "--out", str(out)], env={}) == 0
            outs.append(out.read_bytes())
            reports.append([l for l in capsys.readouterr().out.splitlines() if not l.startswith("wall_time_s")])
        assert outs[0] == outs[1] and reports[0] == reports[1]

    def test_report_file(self, tmp_path, capsys):
        rep = tmp_path / "r.txt"
        assert cli.main(["run", "fixture:open9", "--degree", "10", "--report", str(rep)], env={}) == 0
        assert capsys.readouterr().out == "" and "e_inf:" in rep.read_text()

    def test_stdin(self, monkeypatch, capsys):
        monkeypatch.setattr("sys.stdin", io.StringIO(CONSTANT))
        assert cli.main(["run", "-", "--degree", "4"], env={}) == 0


class TestCompare:
    def test_reference_rows(self, capsys):
        expected = {"closed8": {"dual": (0.664, 0.167), "huang": (9.41, 3.98)},
                    "open9": {"dual": (0.398, 0.106), "huang": (5.78, 3.03)}}
        for name, rows in expected.items():
            assert cli.main(["compare", f"fixture:{name}", "--degree", "10", "--methods", "dual,huang",
                             "--csv", "-"], env={}) == 0
            got = {r["method"]: r for r in csv.DictReader(io.StringIO(capsys.readouterr().out))}
            for method, (e_inf, e_2) in rows.items():
                assert third_digit(float(got[method]["e_inf"]), e_inf)
                assert third_digit(float(got[method]["e_2"]), e_2)

    def test_lu_rows(self, capsys):
        argv = ["compare", "fixture:closed8", "--degree", "10", "--methods", "lu", "--lu-iters", "25,50",
                "--lu-lambda", "2", "--csv", "-"]
        assert cli.main(argv, env={}) == 0
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert [r["iter"] for r in rows] == ["25", "50"]
        assert all(r["lu_lambda"] == "2" and r["lu_nodes"] == "uniform" for r in rows)
        assert float(rows[1]["e_inf"]) < float(rows[0]["e_inf"])

    def test_empty(self, capsys):
        assert cli.main(["compare", "fixture:closed8", "--methods", ""], env={}) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 2 and lines[0].startswith("method")

    def test_table_and_csv_file(self, tmp_path, capsys):
        path = tmp_path / "t.csv"
        assert cli.main(["compare", "fixture:open9", "--degree", "10", "--methods", "dual,huang,lu",
                         "--csv", str(path)], env={}) == 0
        table = capsys.readouterr().out
        assert "huang" in table and "lu" in table
        rows = list(csv.DictReader(path.open()))
        assert tuple(rows[0].keys()) == cli.COMPARE_FIELDS and len(rows) == 3

    def test_needs_single_degree(self, capsys):
        assert cli.main(["compare", "fixture:open9", "--degree", "9,10"], env={}) == cli.EXIT_VALIDATION


class TestErrors:
    def test_parse_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.curve"
        bad.write_text("segment\ndimension: 2\ndegree: 1\npoints:\n0 0\n1\n")
        assert cli.main(["run", str(bad), "--degree", "3"], env={}) == cli.EXIT_PARSE
        assert "line 6" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert cli.main(["run", str(tmp_path / "none"), "--degree", "3"], env={}) == cli.EXIT_PARSE

    @pytest.mark.parametrize("argv", [
        ["run", "fixture:closed8"],
        ["run", "fixture:closed8", "--degree", "10", "--k", "6", "--l", "6"],
        ["run", "fixture:closed8", "--degree", "30"],
        ["run", "fixture:closed8", "--degree", "5", "--method", "huang"],
        ["run", "fixture:closed8", "--degree", "10", "--alpha", "-2"],
        ["run", "fixture:closed8", "--degree", "10", "--subdivide", "1.5"],
        ["run", "fixture:closed8", "--degree", "10", "--samples", "1"],
        ["run", "fixture:nothing", "--degree", "10"],
    ])
    def test_validation(self, argv, capsys):
        assert cli.main(argv, env={}) == cli.EXIT_VALIDATION
        assert "invalid input" in capsys.readouterr().err

    def test_numerical_failure(self, capsys):
        argv = ["run", "fixture:closed8", "--degree", "10", "--eps", "1e-300"]
        assert cli.main(argv, env={}) == cli.EXIT_NUMERIC
        assert "numerical failure" in capsys.readouterr().err

    def test_bad_flag(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["run", "fixture:closed8", "--bogus"], env={})
        assert info.value.code == 2


class TestEnvironment:
    def test_override_default(self, capsys):
        assert cli.main(["run", "fixture:closed8"], env={"RATBEZ_DEGREE": "10", "RATBEZ_METHOD": "huang"}) == 0
        vals = report_values(capsys.readouterr().out)[0]
        assert vals["degree"] == "10" and "elevation" in vals

    def test_flag_beats_environment(self, capsys):
        assert cli.main(["run", "fixture:closed8", "--degree", "9"], env={"RATBEZ_DEGREE": "10"}) == 0
        assert report_values(capsys.readouterr().out)[0]["degree"] == "9"


def test_example_command(capsys):
    assert cli.main(["example", "open9"], env={}) == 0
    doc = parse_document(capsys.readouterr().out)
    assert np.array_equal(doc.segments[0].weights, load_fixture("open9").segments[0].weights)
