import json

import pytest

from noisytr.commands.overrides import parse_seeds
from noisytr.errors import ConfigError
from noisytr.main import main


def _last_json(text: str) -> dict:
    lines = [line for line in text.splitlines() if line.startswith("{")]
    return json.loads(lines[-1])


def _ok(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    assert code == 0, captured.err
    return _last_json(captured.out)["result"]


def _fail(capsys, argv, expected_code=1):
    code = main(argv)
    assert code == expected_code
    return _last_json(capsys.readouterr().err)


class TestParseSeeds:
    def test_forms(self):
        assert parse_seeds("1-3,7") == [1, 2, 3, 7]
        assert parse_seeds("5") == [5]
        assert parse_seeds(" 2 , 4 ") == [2, 4]

    def test_garbage(self):
        with pytest.raises(ConfigError) as exc_info:
            parse_seeds("a-b")
        assert exc_info.value.field == "--seeds"


class TestCheck:
    def test_quadratic(self, capsys):
        result = _ok(capsys, ["check", "quadratic8", "--points", "5"])
        assert result["problem"] == "quadratic8"
        assert result["points"] == 5
        assert result["max_grad_rel_err"] < 1e-8
        assert result["max_hessian_asymmetry"] == 0.0
        assert result["gnorm_at_minimizer"] == 0.0

    def test_schittkowski_start(self, capsys):
        result = _ok(capsys, ["check", "s271", "--points", "2"])
        assert result["points"] == 3
        assert result["f_at_start"] == pytest.approx(75.0, rel=1e-12)
        assert result["f_at_minimizer"] == 0.0

    def test_unknown_problem(self, capsys):
        error = _fail(capsys, ["check", "rosenbrock"])
        assert error["type"] == "UnsupportedProblemError"

    def test_zero_step(self, capsys):
        error = _fail(capsys, ["check", "quadratic8", "--h", "0"])
        assert error["type"] == "EvaluationError"


class TestUsage:
    def test_unknown_command(self, capsys):
        error = _fail(capsys, ["frobnicate"], expected_code=2)
        assert error["type"] == "UsageError"

    def test_no_command(self, capsys):
        assert main([]) == 2

    def test_bad_choice(self, capsys):
        error = _fail(capsys, ["run", "quad-fail", "--variant", "sometimes"], expected_code=2)
        assert error["type"] == "UsageError"

    def test_help(self, capsys):
        assert main(["--help"]) == 0
        assert "constants" in capsys.readouterr().out


class TestPresetAndRun:
    def test_list(self, capsys):
        result = _ok(capsys, ["preset", "--list"])
        assert "quad-fail" in result["presets"]
        assert len(result["presets"]) == 12

    def test_run_with_overrides(self, capsys, tmp_path):
        out = tmp_path / "out"
        result = _ok(capsys, [
            "run", "quad-fail", "--seeds", "1", "--iters", "20", "--variant", "noisy",
            "--out", str(out), "--workers", "1",
        ])
        assert len(result["trace_files"]) == 1
        assert result["trace_files"][0].endswith("quadratic8_noisy_s1.csv")
        assert result["runs"][0]["iterations"] == 20
        assert (out / "summary.json").exists()

    def test_preset_runs(self, capsys, tmp_path):
        result = _ok(capsys, [
            "preset", "quad-fail", "--seeds", "2", "--iters", "10", "--out", str(tmp_path), "--solver", "dogleg",
        ])
        assert len(result["trace_files"]) == 2
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary["config"]["trust_region"]["solver"] == "dogleg"

    def test_empty_seeds(self, capsys, tmp_path):
        error = _fail(capsys, ["run", "quad-fail", "--seeds", ",", "--out", str(tmp_path)])
        assert error["type"] == "ConfigError"
        assert "experiment.seeds" in error["error"]

    def test_missing_config(self, capsys):
        error = _fail(capsys, ["run", "does-not-exist.toml"])
        assert error["type"] == "ExperimentIOError"

    def test_rtable(self, capsys, tmp_path):
        config = tmp_path / "grid.toml"
        config.write_text(
            '[problem]\nid = "tridiag:20"\nx0 = "box"\nx0_half_width = 5.0\n'
            "[noise]\neps_B = 0.0\n"
            "[experiment]\nseeds = [1, 2]\nvariants = [\"noisy\"]\nplots = false\n"
            "[rtable]\neps_f_grid = [1.0]\neps_g_grid = [1.0]\n"
        )
        result = _ok(capsys, ["rtable", str(config), "--iters", "30", "--out", str(tmp_path / "rt")])
        assert result["all_finite"] is True
        assert result["spread"] == 0.0
        assert (tmp_path / "rt" / "rtable.csv").exists()


class TestConstants:
    def test_tridiag_big(self, capsys):
        result = _ok(capsys, ["constants", "tridiag-big"])
        constants = result["constants"]
        assert constants["r"] == 4.0
        assert constants["L"] == pytest.approx(1.0)
        assert constants["L_B"] == pytest.approx(1001.0)
        assert constants["M"] == pytest.approx(501.0)
        assert result["accepted_increase_bound"] == pytest.approx(36.0)
        assert result["level_set_band"] > 20.0

    def test_vanishing_curvature(self, capsys):
        error = _fail(capsys, ["constants", "s293-big"])
        assert error["type"] == "DiagnosticError"
