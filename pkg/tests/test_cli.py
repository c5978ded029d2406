"""
Tests for the citer command line
"""

import json
import math

import pytest
from typer.testing import CliRunner

from citer import __version__
from citer.cli import app

runner = CliRunner()

F_Q = '{"type": "rational", "num": [0, 1], "den": [1, -1]}'


def _value(result):
    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    return complex(*data["value"]), data


class TestCLICommands:

    def test_cli_help(self):
        result = runner.invoke(app, ["--help"])
        assert result.exit_code == 0
        for command in ("eval", "verify", "continue", "transform", "monodromy", "config", "version"):
            assert command in result.stdout

    def test_version_command(self):
        result = runner.invoke(app, ["version"])
        assert result.exit_code == 0
        assert __version__ in result.stdout
        assert "Numpy" in result.stdout


class TestEval:

    def test_zeta(self):
        value, data = _value(runner.invoke(app, ["--quiet", "eval", "zeta", "--s", "2"]))
        assert abs(value - math.pi**2 / 6) < 1e-9
        assert set(data) == {"value", "error_estimate", "runtime_ms"}

    def test_polylog(self):
        value, _ = _value(runner.invoke(app, ["--quiet", "eval", "polylog", "--s", "2", "--w", "0.5"]))
        assert abs(value - (math.pi**2 / 12 - math.log(2) ** 2 / 2)) < 1e-9

    def test_dirichlet_from_shorthand(self):
        args = ["--quiet", "eval", "dirichlet", "--s", "3", "--series", "character mod 4"]
        value, _ = _value(runner.invoke(app, args))
        assert abs(value - math.pi**3 / 32) < 1e-9

    def test_series_transform(self):
        value, _ = _value(runner.invoke(app, ["--quiet", "eval", "series", "--series", "katz a=2", "--s", "3"]))
        # (1 - 2^{-2}) zeta(3)
        assert abs(value - 0.75 * 1.2020569031595942) < 1e-9

    def test_json_file(self, temp_dir):
        out = temp_dir / "zeta.json"
        result = runner.invoke(app, ["--quiet", "--json", str(out), "eval", "zeta", "--s", "3"])
        assert result.exit_code == 0
        assert json.loads(out.read_text()) == json.loads(result.stdout)

    def test_bad_exponent(self):
        result = runner.invoke(app, ["--quiet", "eval", "zeta", "--s", "abc"])
        assert result.exit_code == 2
        assert "SpecError" in result.output

    def test_unknown_kind(self):
        result = runner.invoke(app, ["--quiet", "eval", "bessel", "--s", "2"])
        assert result.exit_code == 2

    def test_outside_convergence(self):
        result = runner.invoke(app, ["--quiet", "eval", "zeta", "--s", "0.5"])
        assert result.exit_code == 3
        assert "ConvergenceConstraint" in result.output


class TestContinue:

    def test_zeta_at_minus_one(self):
        value, data = _value(runner.invoke(app, ["--quiet", "continue", "--series", F_Q, "--k", "1"]))
        assert abs(value + 1 / 12) < 1e-10
        assert data["route"] == "laurent"

    def test_katz_shorthand(self):
        value, _ = _value(runner.invoke(app, ["--quiet", "continue", "--series", "katz a=2", "--k", "1"]))
        assert abs(value - 0.25) < 1e-10

    def test_derivative_route(self):
        args = ["--quiet", "continue", "--series", "katz a=2", "--k", "1", "--derivative"]
        value, data = _value(runner.invoke(app, args))
        assert abs(value - 0.25) < 1e-14
        assert data["route"] == "derivative"

    def test_character_at_one(self):
        args = ["--quiet", "continue", "--series", "character mod 4", "--s", "1"]
        value, _ = _value(runner.invoke(app, args))
        assert abs(value - math.pi / 4) < 1e-9

    def test_residue(self):
        value, _ = _value(runner.invoke(app, ["--quiet", "continue", "--series", F_Q, "--residue"]))
        assert abs(value - 1.0) < 1e-10

    def test_pole(self):
        result = runner.invoke(app, ["--quiet", "continue", "--series", F_Q, "--s", "1"])
        assert result.exit_code == 3
        assert "PositiveIntegerPole" in result.output

    def test_needs_one_target(self):
        result = runner.invoke(app, ["--quiet", "continue", "--series", F_Q])
        assert result.exit_code == 2

    def test_radius_too_large(self):
        result = runner.invoke(app, ["--quiet", "continue", "--series", F_Q, "--k", "1", "--delta", "7"])
        assert result.exit_code == 3
        assert "RadiusError" in result.output


class TestTransformAndMonodromy:

    def test_gap_evaluation(self):
        args = ["--quiet", "transform", "--series", "katz a=2", "--s", "2", "--z", "0.5"]
        value, _ = _value(runner.invoke(app, args))
        expected = sum((-1) ** (n + 1) * 0.5 ** (n * n) for n in range(1, 20))
        assert abs(value - expected) < 1e-12

    def test_gap_transform(self):
        args = ["--quiet", "transform", "--series", F_Q, "--s", "3", "--gap-k", "2"]
        value, _ = _value(runner.invoke(app, args))
        assert abs(value - 1.2020569031595942) < 1e-8

    def test_transform_needs_one_mode(self):
        result = runner.invoke(app, ["--quiet", "transform", "--series", F_Q, "--s", "2"])
        assert result.exit_code == 2

    def test_monodromy_rejects_origin(self):
        result = runner.invoke(app, ["--quiet", "monodromy", "--s", "2", "--w", "0"])
        assert result.exit_code == 2

    @pytest.mark.slow
    def test_dilogarithm_monodromy(self):
        result = runner.invoke(app, ["--quiet", "monodromy", "--s", "2", "--w", "0.5"])
        assert result.exit_code == 0, result.output
        data = json.loads(result.stdout)
        assert data["matched_branch"] == 0
        assert complex(*data["predicted"]) == pytest.approx(2j * math.pi * math.log(2))


class TestVerify:

    def test_list(self):
        result = runner.invoke(app, ["verify", "--list"])
        assert result.exit_code == 0
        assert "Verification suites" in result.stdout

    def test_unknown_suite(self):
        result = runner.invoke(app, ["--quiet", "verify", "nope"])
        assert result.exit_code == 2

    @pytest.mark.slow
    def test_core_suite_report(self, temp_dir):
        out = temp_dir / "core.json"
        html = temp_dir / "core.html"
        result = runner.invoke(app, ["--quiet", "--json", str(out), "verify", "core", "--html", str(html)])
        assert result.exit_code == 0, result.output
        data = json.loads(out.read_text())
        assert data["summary"]["failed"] == 0
        assert html.exists()


class TestConfigCommand:

    def test_show(self):
        result = runner.invoke(app, ["config", "--show"])
        assert result.exit_code == 0
        assert "rel_tol" in result.stdout

    def test_create(self, temp_dir):
        path = temp_dir / "citer.yaml"
        result = runner.invoke(app, ["config", "--create", "--file", str(path)])
        assert result.exit_code == 0
        assert path.exists()

    def test_template(self):
        result = runner.invoke(app, ["config", "--template"])
        assert result.exit_code == 0
        assert "comult_terms: 40" in result.stdout

    def test_config_file_flag(self, temp_dir):
        path = temp_dir / "citer.yaml"
        path.write_text("comult_terms: 12\n")
        result = runner.invoke(app, ["--config", str(path), "config", "--show"])
        assert "comult_terms: 12" in result.stdout
