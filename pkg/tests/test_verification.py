"""
Tests for the verification suites and their runner
"""

import math

import numpy as np
import pytest

from citer.core.continuation import ContourSpec
from citer.core.errors import RadiusError
from citer.core.verification import (
    SUITES,
    CheckDefinition,
    SuiteContext,
    SuiteLoader,
    SuiteRunner,
    _disc_points,
    bernoulli_zeta,
    euler_maclaurin_zeta,
    gaussian_ideal_enumeration,
    polylog_series,
    richardson_t_derivative,
    run_suite,
)
from citer.models.results import CheckStatus
from citer.utils.config import Config


@pytest.fixture
def context():
    config = Config()
    return SuiteContext(cfg=config.quadrature(), contour=ContourSpec(), config=config)


def _constant(value, expected, error=0.0):
    return lambda ctx: (complex(value), complex(expected), error)


class TestSuiteLoader:

    def test_list_suites(self):
        assert SuiteLoader().list_suites() == list(SUITES) + ["all"]

    def test_all_is_union_in_order(self):
        loader = SuiteLoader()
        combined = [check.id for name in SUITES for check in loader.load_suite(name)]
        assert [check.id for check in loader.load_suite("all")] == combined
        assert len(combined) >= 40

    def test_ids_unique(self):
        ids = [check.id for check in SuiteLoader().load_suite("all")]
        assert len(ids) == len(set(ids))

    def test_each_check_in_its_suite(self):
        loader = SuiteLoader()
        for name in SUITES:
            assert {check.suite for check in loader.load_suite(name)} == {name}

    def test_unknown_suite(self):
        with pytest.raises(KeyError):
            SuiteLoader().load_suite("nope")

    def test_suites_cached(self):
        loader = SuiteLoader()
        assert loader.load_suite("core") is loader.load_suite("core")


class TestCheckDefinition:

    def test_pass(self, context):
        check = CheckDefinition("c", "core", "constant", 1e-9, "test", _constant(1.0, 1.0))
        result = check.run(context)
        assert result.status == CheckStatus.PASS
        assert result.runtime_ms >= 0.0

    def test_wider_tolerance_applies(self, context):
        check = CheckDefinition("c", "core", "constant", 1e-9, "test", _constant(1.0, 1.0 + 1e-6))
        assert check.run(context).status == CheckStatus.FAIL
        assert check.run(context, tolerance=1e-5).status == CheckStatus.PASS

    def test_error_becomes_failure(self, context):
        def compute(ctx):
            raise RadiusError("circle reaches a pole")

        result = CheckDefinition("c", "core", "raises", 1.0, "test", compute).run(context)
        assert result.status == CheckStatus.FAIL
        assert "RadiusError" in result.note

    def test_skip_note(self, context):
        check = CheckDefinition("c", "core", "skipped", 1e-9, "test", _constant(-1.0, 1.0), skip_note="sign")
        result = check.run(context)
        assert result.status == CheckStatus.SKIPPED
        assert result.note == "sign"

    def test_printed_residue_formula_is_skipped(self, context):
        check = next(c for c in SuiteLoader().load_suite("continuation") if c.skip_note)
        result = check.run(context)
        assert result.status == CheckStatus.SKIPPED
        assert result.computed == (-1.0, 0.0)

    @pytest.mark.parametrize("check_id", [
        "gamma-half", "antipode-sign", "zeta-2", "katz-grid", "mzv-convergence-wall",
        "gamma-functional-equation", "principal-power-integers", "gamma-quadrature-s=(3+1j)",
        "path-split-additivity", "loop-values", "closed-form-partial-sums", "character-periodicity",
        "gaussian-ideal-enumeration", "ideal-count-multiplicativity", "derivative-finite-differences",
    ])
    def test_cheap_checks_pass(self, context, check_id):
        check = next(c for c in SuiteLoader().load_suite("all") if c.id == check_id)
        result = check.run(context)
        assert result.status == CheckStatus.PASS, result.note or result.abs_error

    @pytest.mark.slow
    @pytest.mark.parametrize("check_id", ["fractional-semigroup", "comult-geometric-decay", "mzv-3-2", "stuffle-2-3"])
    def test_costly_checks_pass(self, context, check_id):
        check = next(c for c in SuiteLoader().load_suite("all") if c.id == check_id)
        result = check.run(context)
        assert result.status == CheckStatus.PASS, result.note or result.abs_error


class TestSampling:

    def test_disc_points_cover_reflection_half_plane(self, context):
        points = _disc_points(context, 100, 20.0, 1)
        assert len(points) == 100
        assert np.all(np.abs(points) <= 20.0)
        assert np.any(points.real < -5.0)
        poles = np.minimum(0.0, np.round(points.real))
        assert np.all(np.abs(points - poles) >= 0.1)

    def test_disc_points_reproducible(self, context):
        assert np.array_equal(_disc_points(context, 10, 20.0, 1), _disc_points(context, 10, 20.0, 1))


class TestOracles:

    @pytest.mark.parametrize("s, expected", [(2.0, math.pi**2 / 6), (4.0, math.pi**4 / 90), (-1.0, -1 / 12)])
    def test_euler_maclaurin(self, s, expected):
        assert abs(euler_maclaurin_zeta(s) - expected) < 1e-13

    @pytest.mark.parametrize("k, expected", [(0, -0.5), (1, -1 / 12), (2, 0.0), (3, 1 / 120)])
    def test_bernoulli(self, k, expected):
        assert bernoulli_zeta(k) == pytest.approx(expected)

    def test_polylog_series(self):
        assert polylog_series(1, 0.5) == pytest.approx(math.log(2))

    def test_gaussian_ideal_enumeration(self):
        counts = gaussian_ideal_enumeration(50)
        # ideals of norm 25: (5), (2+i)^2, (2-i)^2
        assert counts[25] == 3
        assert counts[21] == 0
        assert counts.sum() == sum(1 for a in range(-7, 8) for b in range(-7, 8) if 0 < a * a + b * b <= 50) // 4

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_richardson_t_derivative(self, m):
        # F(t) = t^2 gives (t d/dt)^m F = 2^m t^2
        assert richardson_t_derivative(lambda u: np.exp(2 * np.asarray(u)), m) == pytest.approx(2.0**m, rel=1e-6)


class TestSuiteRunner:

    def test_config_echo_and_versions(self):
        loader = SuiteLoader()
        loader._suites_cache["core"] = [CheckDefinition("c", "core", "constant", 0.0, "test", _constant(1.0, 1.0))]
        report = SuiteRunner(Config(), show_progress=False, loader=loader).run("core")
        assert report.suite == "core"
        assert report.all_passed
        assert report.config["rel_tol"] == 1e-10
        assert report.config["seed"] == 20240101
        assert set(report.versions) == {"citer", "numpy", "sympy"}

    @pytest.mark.slow
    def test_core_suite_passes(self):
        report = run_suite("core")
        assert report.all_passed, [r.name for r in report.results if r.status == CheckStatus.FAIL]

    @pytest.mark.slow
    def test_parallel_keeps_order(self):
        serial = run_suite("core")
        parallel = run_suite("core", config=Config(parallel_workers=4))
        assert [r.name for r in serial.results] == [r.name for r in parallel.results]
        assert [r.computed for r in serial.results] == [r.computed for r in parallel.results]

    @pytest.mark.slow
    def test_deterministic(self):
        first = run_suite("comult").to_dict()
        second = run_suite("comult").to_dict()
        assert first == second

    def test_tolerance_sets_rel_tol(self):
        runner = SuiteRunner(Config(rel_tol=1e-8), tolerance=1e-8, show_progress=False)
        assert runner.context().cfg.rel_tol == 1e-8
