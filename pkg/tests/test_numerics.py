"""
Tests for the numerical core: gamma, branches, tanh-sinh and circle coefficients
"""

import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from citer.core.errors import NoConvergence, PoleError, RadiusError, TailTooFat, ZeroBaseError
from citer.core.numerics import (
    Estimate,
    circle_coefficients,
    gamma,
    generalized_binomial,
    log_gamma,
    principal_log,
    principal_power,
    quad_finite,
    quad_finite_rows,
    quad_halfline,
    rgamma,
)
from citer.utils.config import QuadratureConfig

complex_points = st.builds(
    complex,
    st.floats(0.1, 8.0, allow_nan=False, allow_infinity=False),
    st.floats(-6.0, 6.0, allow_nan=False, allow_infinity=False),
)


class TestGamma:
    """Gamma and its reciprocal"""

    @pytest.mark.parametrize("s", [0.5, 1.0, 2.5, 7.25, 0.3 + 0.7j, -2.5, -0.5 + 3j, 12 - 4j])
    def test_matches_mpmath(self, s):
        expected = complex(mpmath.gamma(s))
        assert abs(gamma(s) - expected) <= 1e-12 * max(1.0, abs(expected))

    def test_half_is_sqrt_pi(self):
        assert abs(gamma(0.5) - math.sqrt(math.pi)) < 1e-14

    @pytest.mark.property
    @given(complex_points)
    @settings(max_examples=200, deadline=None)
    def test_functional_equation(self, s):
        g = gamma(s)
        assert abs(gamma(s + 1) - s * g) <= 1e-11 * max(1.0, abs(s * g))

    @pytest.mark.property
    @given(complex_points)
    @settings(max_examples=200, deadline=None)
    def test_legendre_duplication(self, s):
        lhs = gamma(s) * gamma(s + 0.5)
        rhs = 2 ** (1 - 2 * s) * math.sqrt(math.pi) * gamma(2 * s)
        assert abs(lhs - rhs) <= 1e-11 * max(1.0, abs(rhs))

    def test_reflection(self):
        s = 0.3 + 0.7j
        assert abs(gamma(s) * gamma(1 - s) - math.pi / cmath.sin(math.pi * s)) < 1e-12

    @pytest.mark.parametrize("pole", [0, -1, -2, -7])
    def test_poles_raise(self, pole):
        with pytest.raises(PoleError):
            gamma(pole)
        with pytest.raises(PoleError):
            log_gamma(pole)

    @pytest.mark.parametrize("pole", [0, -1, -3])
    def test_reciprocal_vanishes_at_poles(self, pole):
        assert rgamma(pole) == 0

    def test_log_gamma_exponentiates_to_gamma(self):
        s = 40 + 3j
        assert abs(cmath.exp(log_gamma(s)) / gamma(s) - 1) < 1e-12


class TestBranches:
    """Principal logarithm and powers with branch offsets"""

    def test_negative_axis_is_upper_side(self):
        assert principal_log(-1) == pytest.approx(complex(0, math.pi))
        assert principal_log(complex(-1, -0.0)).imag == pytest.approx(math.pi)

    def test_branch_offset(self):
        assert principal_log(2, 1) == pytest.approx(complex(math.log(2), 2 * math.pi))
        assert principal_log(2, -1).imag == pytest.approx(-2 * math.pi)

    def test_zero_logarithm_raises(self):
        with pytest.raises(ZeroBaseError):
            principal_log(0)

    def test_zero_base(self):
        assert principal_power(0, 2.5) == 0
        with pytest.raises(ZeroBaseError):
            principal_power(0, -1)

    def test_vectorised_power(self):
        z = np.array([1.0, 4.0, -1.0])
        out = principal_power(z, 0.5)
        assert out == pytest.approx(np.array([1.0, 2.0, 1j]))

    def test_branch_changes_non_integer_powers_only(self):
        w = 0.3 + 0.4j
        assert principal_power(w, 3, 1) == pytest.approx(principal_power(w, 3, 0))
        assert abs(principal_power(w, 2.5, 1) - principal_power(w, 2.5, 0)) > 1e-3


class TestBinomial:

    def test_half_integer(self):
        assert generalized_binomial(2.5, 3) == pytest.approx(0.3125, abs=1e-15)

    def test_exact_at_integers(self):
        assert generalized_binomial(5, 2) == 10
        assert generalized_binomial(5, 7) == 0

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError):
            generalized_binomial(1.5, -1)


class TestQuadrature:
    """tanh-sinh on finite intervals and the half-line"""

    def test_endpoint_singularity(self, cfg):
        value = quad_finite(lambda x: x ** -0.5, 0.0, 1.0, cfg)
        assert isinstance(value, Estimate)
        assert abs(value - 2.0) < 1e-9
        assert value.error < 1e-6

    def test_logarithmic_endpoint(self, cfg):
        value = quad_finite(lambda x: np.log(x), 0.0, 1.0, cfg)
        assert abs(value + 1.0) < 1e-9

    def test_offsets_keep_precision_near_b(self, cfg):
        # (1 - x)^{-1/2} needs b - x without cancellation
        value = quad_finite(lambda x, from_a, from_b: from_b ** -0.5, 0.0, 1.0, cfg, with_offsets=True)
        assert abs(value - 2.0) < 1e-9

    def test_rows_integrate_together(self, cfg):
        values, errors = quad_finite_rows(lambda x: np.vstack([x, x**2]), 0.0, 1.0, cfg)
        assert values == pytest.approx([0.5, 1.0 / 3.0], abs=1e-12)
        assert errors.shape == (2,)

    def test_halfline(self, cfg):
        assert abs(quad_halfline(lambda x: x * np.exp(-x), cfg) - 1.0) < 1e-9

    def test_halfline_lower_limit(self, cfg):
        value = quad_halfline(lambda x: np.exp(-x), cfg, lower=2.0)
        assert abs(value - math.exp(-2.0)) < 1e-10

    def test_fat_tail_detected(self, cfg):
        with pytest.raises(TailTooFat):
            quad_halfline(lambda x: 1.0 / (1.0 + x**2), cfg)

    def test_no_convergence_reported(self):
        tight = QuadratureConfig(rel_tol=1e-14, max_level=4)
        with pytest.raises(NoConvergence):
            quad_finite(lambda x: np.sin(200 * x), 0.0, 3.0, tight)


class TestCircleCoefficients:
    """Laurent coefficients from samples on a circle"""

    def test_exponential_taylor(self, cfg):
        c = circle_coefficients(np.exp, 0, 6, radius=1.0, cfg=cfg)
        for k in range(7):
            assert abs(c[k] - 1.0 / math.factorial(k)) < 1e-13
            assert c.error(k) < 1e-10

    def test_laurent_of_bose_kernel(self, cfg):
        g = lambda x: 1.0 / np.expm1(x)
        c = circle_coefficients(g, -1, 3, radius=0.5, cfg=cfg)
        assert c[-1] == pytest.approx(1.0, abs=1e-12)
        assert c[0] == pytest.approx(-0.5, abs=1e-12)
        assert c[1] == pytest.approx(1.0 / 12.0, abs=1e-12)
        assert c[2] == pytest.approx(0.0, abs=1e-12)

    def test_radius_independence(self, cfg):
        g = lambda x: 1.0 / np.expm1(x)
        small = circle_coefficients(g, -1, 3, radius=0.3, cfg=cfg)
        large = circle_coefficients(g, -1, 3, radius=1.0, cfg=cfg)
        assert abs(small[3] - large[3]) < 1e-10

    def test_singularity_on_circle(self, cfg):
        with np.errstate(divide="ignore", invalid="ignore"):
            with pytest.raises(RadiusError):
                circle_coefficients(lambda x: 1.0 / (x - 0.5), 0, 2, radius=0.5, cfg=cfg)

    def test_out_of_range_order(self, cfg):
        c = circle_coefficients(np.exp, 0, 2, radius=1.0, cfg=cfg)
        with pytest.raises(KeyError):
            c[5]

    def test_too_many_orders(self):
        with pytest.raises(ValueError):
            circle_coefficients(np.exp, 0, 200, radius=1.0, cfg=QuadratureConfig(circle_points=64))
