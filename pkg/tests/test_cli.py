"""Command-line interface: output formats, exit codes, determinism, schema
conformance."""

import io
import json
import os
from contextlib import redirect_stdout, redirect_stderr
from pathlib import Path

import pytest

jsonschema = pytest.importorskip("jsonschema")

from ellded.cli import main

SCHEMA_DIR = Path(__file__).resolve().parents[1] / "schema"


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def _load_schema(name):
    with open(SCHEMA_DIR / name) as fh:
        return json.load(fh)


EVAL_SCHEMA = _load_schema("eval_record.schema.json")
VERIFY_SCHEMA = _load_schema("verify_record.schema.json")


class TestEvalOutputs:
    def test_bernoulli(self):
        code, out, _ = run_cli(["eval", "bernoulli", "-k", "12"])
        assert code == 0
        rec = json.loads(out)
        assert rec["value"] == "-691/2730"

    def test_apostol_sum(self):
        code, out, _ = run_cli(
            ["eval", "apostol-sum", "-k", "3", "-q", "1", "-p", "3"])
        assert code == 0
        assert json.loads(out)["value"] == "-1/81"

    def test_elliptic_sum_empty(self):
        code, out, _ = run_cli(
            ["eval", "elliptic-sum", "-n", "1", "-p", "1", "-q", "5",
             "--tau", "2i"])
        assert code == 0
        val = json.loads(out)["value"]
        assert val["re"] == 0.0 and val["im"] == 0.0

    def test_eisenstein_value(self):
        code, out, _ = run_cli(
            ["eval", "eisenstein", "-n", "2", "--tau", "40i"])
        assert code == 0
        val = json.loads(out)["value"]
        import math
        assert abs(val["re"] - math.pi**4 / 45) < 1e-10
        assert abs(val["im"]) < 1e-12

    def test_g_poly_serialization(self):
        code, out, _ = run_cli(["eval", "g-poly", "-w", "2"])
        assert code == 0
        items = json.loads(out)["value"]
        by_exp = {(it["i"], it["j"]): it["coeff"] for it in items}
        assert by_exp[(-1, -1)] == "1/240"

    def test_eval_records_match_schema(self):
        argvs = [
            ["eval", "bernoulli", "-k", "4"],
            ["eval", "g-poly", "-w", "4"],
            ["eval", "eisenstein", "-n", "1", "--tau", "1i", "--kind", "deriv"],
            ["eval", "elliptic-bernoulli", "-m", "3", "--x", "0.2",
             "--y", "0.3", "--tau", "1.1i"],
            ["eval", "zeta-w", "--z", "0.21+0.11i", "--tau", "1i"],
            ["eval", "elliptic-sum", "-n", "1", "-p", "3", "-q", "2",
             "--tau", "1i"],
            ["eval", "reciprocity-rhs", "-n", "1", "-p", "3", "-q", "2",
             "--tau", "1i"],
            ["eval", "generating", "--which", "d", "-p", "3", "-q", "2",
             "--x", "0.01", "--tau", "1i"],
            ["eval", "period-data", "-n", "2"],
        ]
        for argv in argvs:
            code, out, _ = run_cli(argv)
            assert code == 0, argv
            jsonschema.validate(json.loads(out), EVAL_SCHEMA)

    def test_machide_eval(self):
        code, out, _ = run_cli(
            ["eval", "machide", "-m", "1", "-n", "1",
             "--vec-a", "1,1", "--vec-b", "3,3", "--vec-c", "2,2",
             "--vec-x", "0.013,0", "--vec-y", "0.021,0", "--vec-z=-0.014,0",
             "--tau", "1i"])
        assert code == 0
        jsonschema.validate(json.loads(out), EVAL_SCHEMA)


class TestVerifyExitCodes:
    def test_pass(self):
        code, out, _ = run_cli(
            ["verify", "thm11", "-n", "1", "-p", "3", "-q", "2",
             "--tau", "1i"])
        assert code == 0
        for line in out.strip().splitlines():
            rec = json.loads(line)
            jsonschema.validate(rec, VERIFY_SCHEMA)
            assert rec["pass"] is True

    def test_fail_with_tight_tol(self):
        code, out, _ = run_cli(
            ["verify", "eq73", "-n", "1", "--tau", "0.3+1.0i",
             "--tol", "1e-30"])
        assert code == 1
        recs = [json.loads(line) for line in out.strip().splitlines()]
        assert any(not r["pass"] for r in recs)

    def test_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            run_cli(["verify", "thm11", "-n", "1", "-p", "3"])
        assert exc.value.code == 2

    def test_bad_tol_rejected(self):
        with pytest.raises(SystemExit) as exc:
            run_cli(["verify", "eq73", "-n", "1", "--tau", "1i",
                     "--tol", "0.5"])
        assert exc.value.code == 2

    def test_domain_error(self):
        code, _, err = run_cli(
            ["verify", "thm11", "-n", "1", "-p", "4", "-q", "2",
             "--tau", "1i"])
        assert code == 3
        assert "error:" in err

    def test_lower_half_plane_rejected(self):
        code, _, _ = run_cli(
            ["eval", "eisenstein", "-n", "1", "--tau=-1i"])
        assert code == 3


class TestVerifyFamilies:
    @pytest.mark.parametrize("argv", [
        ["verify", "apostol-reciprocity", "--w-max", "4", "--pq-max", "6"],
        ["verify", "thm13", "-p", "3", "-q", "2", "--tau", "1i"],
        ["verify", "prop31", "-p", "3", "-q", "2", "--tau", "1i"],
        ["verify", "lemma32", "-p", "3", "-q", "2", "--tau", "1i"],
        ["verify", "eq73", "-n", "2", "--tau", "1i"],
        ["verify", "three-term", "-n", "1", "-p", "2", "-q", "1",
         "--tau", "1i"],
        ["verify", "eq64", "-w", "4", "--tau", "0.2+1.2i"],
        ["verify", "basis-rank", "-w", "10", "--num-tau", "4", "--seed", "7"],
        ["verify", "limit", "-n", "1", "-p", "3", "-q", "1"],
    ])
    def test_all_pass_and_validate(self, argv):
        code, out, _ = run_cli(argv)
        assert code == 0, argv
        for line in out.strip().splitlines():
            rec = json.loads(line)
            jsonschema.validate(rec, VERIFY_SCHEMA)
            assert rec["pass"] is True

    def test_basis_rank_reports_rank(self):
        code, out, _ = run_cli(
            ["verify", "basis-rank", "-w", "14", "--num-tau", "5",
             "--seed", "3"])
        assert code == 0
        rec = json.loads(out)
        assert rec["rank"] == 2 and rec["expected_rank"] == 2


class TestFormats:
    def test_csv(self):
        code, out, _ = run_cli(
            ["verify", "three-term", "-n", "1", "-p", "2", "-q", "1",
             "--tau", "1i", "--format", "csv"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].split(",") == sorted(lines[0].split(","))
        assert "check" in lines[0]
        assert len(lines) == 2

    def test_pretty(self):
        code, out, _ = run_cli(
            ["eval", "bernoulli", "-k", "2", "--format", "pretty"])
        assert code == 0
        assert 'value="1/6"' in out


class TestToleranceResolution:
    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("ELLDED_TOL", "1e-30")
        code, _, _ = run_cli(
            ["verify", "eq73", "-n", "1", "--tau", "0.3+1.0i"])
        assert code == 1

    def test_flag_beats_env(self, monkeypatch):
        monkeypatch.setenv("ELLDED_TOL", "1e-30")
        code, _, _ = run_cli(
            ["verify", "eq73", "-n", "1", "--tau", "0.3+1.0i",
             "--tol", "1e-6"])
        assert code == 0


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ["verify", "thm11", "-n", "1", "-p", "3", "-q", "2", "--tau", "1i"],
        ["verify", "basis-rank", "-w", "10", "--num-tau", "4", "--seed", "7"],
        ["eval", "elliptic-sum", "-n", "2", "-p", "5", "-q", "3",
         "--tau", "0.3+1.1i"],
    ])
    def test_repeat_runs_byte_identical(self, argv):
        _, out1, _ = run_cli(argv)
        _, out2, _ = run_cli(argv)
        assert out1 == out2
