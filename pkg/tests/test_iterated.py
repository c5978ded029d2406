"""
Tests for iterated integrals, comultiplication and the iterative properties
"""

import math

import mpmath
import numpy as np
import pytest

from citer.core.errors import ConvergenceConstraint, DepthUnsupported, DominationViolated, SpecError
from citer.core.iterated import (
    IteratedIntegralRequest,
    comultiplication_eval,
    dual_zeta,
    fractional_integral,
    gap_transform_integral,
    haar_check,
    homotopy_invariance_check,
    iterativity_check,
    multiple_iterated_integral,
    multiplicative_iterativity_eval,
    polylog_integral,
    polylog_split,
    power_iterated_integral,
)
from citer.core.numerics import gamma
from citer.core.paths import DZ_OVER_ONE_MINUS_Z, DZ_OVER_Z, Path
from citer.core.series import from_coefficients

ZETA3 = float(mpmath.zeta(3))


class TestPowerIteratedIntegral:
    """The transform of F(z)(dz/z)^s over [0, 1]"""

    def test_zeta_two(self, riemann, cfg):
        value = power_iterated_integral(riemann, 2, cfg=cfg)
        assert abs(value - math.pi**2 / 6) < 1e-9

    def test_catalan(self, chi4_model, cfg):
        value = power_iterated_integral(chi4_model, 2, cfg=cfg)
        assert abs(value - float(mpmath.catalan)) < 1e-9

    @pytest.mark.parametrize("k", [1, 2, 5])
    def test_monomials(self, k, cfg):
        model = from_coefficients([0] * (k - 1) + [1])
        s = 2.5 + 1j
        assert abs(power_iterated_integral(model, s, cfg=cfg) - k ** (-s)) < 1e-9

    def test_lower_limit(self, chi4_model, cfg):
        # F_chi4(z)/z = 1/(1 + z^2)
        value = power_iterated_integral(chi4_model, 1, lower=0.5, cfg=cfg)
        assert abs(value - (math.atan(1.0) - math.atan(0.5))) < 1e-10

    def test_needs_convergence(self, riemann, cfg):
        with pytest.raises(ConvergenceConstraint):
            power_iterated_integral(riemann, 1, cfg=cfg)
        with pytest.raises(SpecError):
            power_iterated_integral(riemann, 2, lower=1.0, cfg=cfg)


class TestPolylogarithm:

    @pytest.mark.parametrize("s, w", [(2, 0.5), (1, 0.5), (2.5, 0.3 + 0.4j), (3, -0.7)])
    def test_matches_mpmath(self, s, w, cfg):
        expected = complex(mpmath.polylog(s, w))
        assert abs(polylog_integral(s, w, cfg=cfg) - expected) < 1e-9

    def test_path_must_reach_w(self, cfg):
        with pytest.raises(SpecError):
            polylog_integral(2, 0.5, path=Path.straight(0, 0.4), cfg=cfg)

    def test_single_letter_word(self, cfg):
        request = IteratedIntegralRequest(Path.straight(0.5, 1.0), ((DZ_OVER_Z, 2),))
        assert abs(request.evaluate(cfg) - math.log(2) ** 2 / 2) < 1e-14

    def test_long_words_unsupported(self):
        with pytest.raises(DepthUnsupported):
            IteratedIntegralRequest(
                Path.straight(0.5, 1.0),
                ((DZ_OVER_Z, 1.5), (DZ_OVER_Z, 1.5), (DZ_OVER_Z, 1.5)),
            )


class TestIterativeProperty:

    def test_integer_exponents(self, cfg):
        check = iterativity_check(2.0, 3.0, 0.2, cfg=cfg)
        assert check.passed, check.abs_error

    @pytest.mark.parametrize("v, u", [(0.7, 1.3), (1.5 + 0.5j, 2.2), (0.6, 0.6)])
    def test_non_integer_exponents(self, v, u, cfg):
        check = iterativity_check(v, u, 0.2, cfg=cfg)
        assert check.passed, check.abs_error

    def test_weighted_form(self, chi4_model, cfg):
        check = iterativity_check(1.5, 2.5, 0.3, model=chi4_model, cfg=cfg, tolerance=1e-7)
        assert check.passed, check.abs_error

    def test_exponents_must_be_positive(self, cfg):
        with pytest.raises(ConvergenceConstraint):
            iterativity_check(-0.5, 2.0, cfg=cfg)


class TestComultiplication:
    """The word over a composed path, directly and expanded"""

    def test_generic_paths(self, cfg):
        middle = 0.4 + 0.1j
        result = comultiplication_eval(
            Path.straight(0.3, middle), Path.straight(middle, 0.7), DZ_OVER_ONE_MINUS_Z, 2.5, 40, cfg
        )
        assert result.difference < 1e-8
        assert result.ratio < 1 / 1.1

    def test_degenerate_second_path(self, cfg):
        # a loop about 1 has no net dz/z
        result = comultiplication_eval(
            Path.straight(0.1, 0.3), Path.loop(0.5, 0.2, math.pi, 1), DZ_OVER_ONE_MINUS_Z, 2.5, 40, cfg
        )
        assert result.difference < 1e-8
        assert result.segment_terms == ()

    def test_domination_violated(self, cfg):
        with pytest.raises(DominationViolated):
            comultiplication_eval(
                Path.straight(0.1, 0.6), Path.straight(0.6, 0.65), DZ_OVER_ONE_MINUS_Z, 2.5, 40, cfg
            )

    def test_polylog_split(self, cfg):
        split = polylog_split(2.5, 0.5, eta=0.2, terms=40, cfg=cfg)
        assert split.difference < 1e-8
        assert abs(split.lhs - complex(mpmath.polylog(2.5, 0.5))) < 1e-9

    def test_split_point_range(self, cfg):
        with pytest.raises(SpecError):
            polylog_split(2.5, 0.5, eta=0.6, cfg=cfg)

    def test_homotopy_invariance(self, cfg):
        check = homotopy_invariance_check(
            DZ_OVER_ONE_MINUS_Z, 2.5, Path.straight(0.1, 0.6), Path.polyline(0.1, 0.3 + 0.2j, 0.6), cfg
        )
        assert check.passed, check.abs_error

    def test_homotopy_endpoints_must_agree(self, cfg):
        with pytest.raises(SpecError):
            homotopy_invariance_check(
                DZ_OVER_ONE_MINUS_Z, 2.5, Path.straight(0.1, 0.6), Path.straight(0.1, 0.5), cfg
            )


class TestScalingProperties:

    @pytest.mark.parametrize("k, alpha, s", [(1, 2.0, 2.5), (2, 3.0, 2.0), (1, 0.5, 2 + 3j)])
    def test_haar(self, k, alpha, s, cfg):
        model = from_coefficients([0] * (k - 1) + [1])
        check = haar_check(model, alpha, s, cfg)
        assert check.passed, check.abs_error

    def test_haar_rejects_bad_scaling(self, riemann, cfg):
        with pytest.raises(SpecError):
            haar_check(riemann, 0.0, 2.5, cfg)

    def test_gap_transform_square(self, riemann, cfg):
        value = gap_transform_integral(riemann, 2, 3.0, cfg)
        assert abs(value - ZETA3) < 1e-8

    def test_multiplicative_iterativity(self, riemann, cfg):
        check = multiplicative_iterativity_eval(riemann, 2, 3.5, cfg)
        assert check.passed, check.abs_error

    def test_gap_needs_convergence(self, riemann, cfg):
        with pytest.raises(ConvergenceConstraint):
            gap_transform_integral(riemann, 2, 1.8, cfg)


class TestFractionalAndDual:

    def test_fractional_of_one(self, cfg):
        value = fractional_integral(lambda t: np.ones_like(t, dtype=complex), 0.5, 2.0, cfg)
        assert abs(value - 2.0**0.5 / gamma(1.5)) < 1e-10

    def test_fractional_vectorised(self, cfg):
        xs = np.array([0.5, 1.0, 3.0])
        values = fractional_integral(lambda t: t, 2.0, xs, cfg)
        assert values == pytest.approx(xs**3 / 6)

    def test_fractional_needs_positive_order(self, cfg):
        with pytest.raises(ConvergenceConstraint):
            fractional_integral(lambda t: t, -0.5, 1.0, cfg)

    @pytest.mark.parametrize("s", [2.0, 3.0, 2.5])
    def test_dual_expression(self, riemann, s, cfg):
        assert abs(dual_zeta(riemann, s, cfg) - float(mpmath.zeta(s))) < 1e-8

    def test_dual_needs_convergence(self, riemann, cfg):
        with pytest.raises(ConvergenceConstraint):
            dual_zeta(riemann, 1.0, cfg)


class TestMultipleIntegrals:

    @pytest.mark.slow
    def test_depth_two_is_zeta_three(self, riemann, cfg):
        value = multiple_iterated_integral([riemann, riemann], (2, 1), cfg)
        assert abs(value - ZETA3) < 1e-7

    def test_depth_three_unsupported(self, riemann, cfg):
        with pytest.raises(DepthUnsupported):
            multiple_iterated_integral([riemann] * 3, (2, 1, 1), cfg)

    def test_exponent_sum_wall(self, riemann, cfg):
        with pytest.raises(ConvergenceConstraint):
            multiple_iterated_integral([riemann, riemann], (1.5, 0.4), cfg)
