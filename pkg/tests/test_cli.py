import io
import json
import math
import subprocess
import sys

import pytest

from cubesections import cli, formulas
from cubesections.cli import main, parse_range, read_records
from cubesections.errors import IntegrationError


def run(argv):
    out = io.StringIO()
    code = main(argv, stdout=out)
    return code, out.getvalue()


class TestParseRange:
    def test_forms(self):
        assert parse_range("5") == [5]
        assert parse_range("3..6") == [3, 4, 5, 6]
        assert parse_range("2..2") == [2]

    @pytest.mark.parametrize("text", ["", "a", "6..3", "1..", "1.5"])
    def test_bad(self, text):
        with pytest.raises(Exception):
            parse_range(text)


class TestEval:
    def test_square_section_value(self):
        code, text = run(["eval", "--j", "0", "--k", "2", "--n", "3"])
        assert code == 0
        (rec,) = read_records(text, "csv")
        assert rec.method == "quadrature"
        assert rec.value == pytest.approx(24 / math.pi * math.atan(1 / math.sqrt(2)), abs=1e-8)
        assert rec.upper_bound == 12
        assert rec.lower_bound <= rec.value

    def test_codim_one_grid(self):
        code, text = run(["eval", "--j", "0", "--k", "2..11", "--n", "3..12", "--format", "json"])
        assert code == 0
        recs = [r for r in read_records(text, "json") if r.k == r.n - 1]
        assert len(recs) == 10
        for r in recs:
            assert r.value == pytest.approx(formulas.f0_codim1_closed_form(r.n), abs=1e-8)

    def test_higher_faces_report_bounds(self):
        code, text = run(["eval", "--j", "1", "--k", "2", "--n", "5"])
        (rec,) = read_records(text, "csv")
        assert rec.method == "bounds" and rec.value is None
        assert rec.lower_bound <= rec.upper_bound == 10

    def test_invalid_points_are_skipped(self):
        code, text = run(["eval", "--j", "0..3", "--k", "2", "--n", "3"])
        assert code == 0
        assert [(r.j, r.k, r.n) for r in read_records(text, "csv")] == [(0, 2, 3), (1, 2, 3)]

    @pytest.mark.parametrize("argv", [
        ["eval", "--j", "0", "--k", "3", "--n", "3"],
        ["eval", "--j", "2", "--k", "2", "--n", "5"],
        ["eval", "--j", "x", "--k", "2", "--n", "5"],
        ["eval", "--k", "2", "--n", "5"],
        ["simulate", "--j", "1", "--k", "2", "--n", "5", "--method", "polygon_exact"],
        ["simulate", "--j", "0", "--k", "2", "--n", "5", "--seed", "-3"],
        ["frobnicate"],
    ])
    def test_usage_errors_exit_2(self, argv, capsys):
        assert run(argv)[0] == 2

    def test_integration_failure_exits_3(self, monkeypatch, capsys):
        def boom(*args, **kwargs):
            raise IntegrationError("no convergence", value=1.0, abs_error_estimate=1.0, evaluations=10)

        monkeypatch.setattr(formulas, "f0_exact", boom)
        code, _ = run(["eval", "--j", "0", "--k", "2", "--n", "3"])
        assert code == 3
        assert "numerical failure" in capsys.readouterr().err


class TestOutputFormats:
    def test_csv_and_json_round_trip(self):
        argv = ["eval", "--j", "0..1", "--k", "1..3", "--n", "4..5"]
        _, csv_text = run(argv)
        _, json_text = run(argv + ["--format", "json"])
        assert read_records(csv_text, "csv") == read_records(json_text, "json")
        assert isinstance(json.loads(json_text), list)

    def test_csv_header_and_line_endings(self):
        _, text = run(["eval", "--j", "0", "--k", "1", "--n", "3"])
        assert text.splitlines()[0] == ",".join(cli.FIELDS)
        assert "\r" not in text

    def test_empty_json_is_valid(self):
        out = io.StringIO()
        writer = cli.RecordWriter(out, "json")
        writer.close()
        assert json.loads(out.getvalue()) == []


class TestSimulate:
    ARGS = ["simulate", "--j", "0..1", "--k", "2..3", "--n", "5", "--samples", "6000", "--seed", "42"]

    def test_byte_identical_across_workers(self):
        outputs = {run(self.ARGS + ["--workers", str(w)])[1] for w in (1, 2, 5)}
        assert len(outputs) == 1

    def test_records(self):
        code, text = run(self.ARGS + ["--format", "json"])
        assert code == 0
        recs = read_records(text, "json")
        assert [(r.j, r.k) for r in recs] == [(0, 2), (1, 2), (0, 3), (1, 3)]
        assert all(r.samples == 6000 and r.seed == 42 and r.std_error >= 0 for r in recs)

    def test_random_seed_is_reported(self):
        _, text = run(["simulate", "--j", "0", "--k", "2", "--n", "4", "--samples", "100", "--seed", "random"])
        (rec,) = read_records(text, "csv")
        assert isinstance(rec.seed, int)

    def test_hull_method(self):
        _, text = run(["simulate", "--j", "0", "--k", "2", "--n", "3", "--samples", "20000",
                       "--method", "gaussian_hull"])
        (rec,) = read_records(text, "csv")
        assert abs(rec.value - formulas.f0_exact(2, 3)) <= 4 * rec.std_error


class TestVerify:
    def test_quick_passes(self, capsys):
        code, text = run(["verify", "--level", "quick"])
        report = json.loads(text)
        assert code == 0 and report["passed"] and report["failed"] == []
        assert capsys.readouterr().err.count("[PASS]") == len(report["checks"])

    def test_tampered_constant_fails(self, monkeypatch, capsys):
        monkeypatch.setattr(formulas, "_SQRT_2_OVER_PI", formulas._SQRT_2_OVER_PI * (1 + 1e-6))
        code, text = run(["verify", "--level", "quick"])
        assert code == 1
        assert "closed_form_agreement" in json.loads(text)["failed"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cubesections", "eval", "--j", "0", "--k", "1", "--n", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert read_records(proc.stdout, "csv")[0].value == pytest.approx(2.0, abs=1e-12)
