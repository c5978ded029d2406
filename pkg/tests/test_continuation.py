"""
Tests for analytic continuation, residues and Bernoulli numbers
"""

import math

import mpmath
import pytest

from citer.core.continuation import (
    ContourSpec,
    bound_near_pole,
    check_radius,
    continue_L,
    generalized_bernoulli,
    laurent_residue_sum,
    overlap_check,
    overlap_points,
    residue_at_1,
    residue_from_laurent,
    singularity_distance,
    truncated_transform,
    value_at_negative_integer,
    value_by_derivative,
    w_truncated_continuation,
)
from citer.core.errors import NoClosedForm, NoLaurentData, PositiveIntegerPole, RadiusError, SpecError
from citer.core.series import CharacterTable, from_character, ideal_count_series, katz_psi, moebius_series
from citer.models.results import ContinuationRoute


class TestContourSpec:

    def test_defaults(self):
        spec = ContourSpec()
        assert (spec.delta, spec.x_max) == (0.5, 50.0)
        assert spec.circle_points >= 16
        assert spec.circle_points & (spec.circle_points - 1) == 0

    @pytest.mark.parametrize("kwargs", [{"delta": 0.0}, {"delta": 2.0, "x_max": 1.0}, {"samples_per_unit": 0}])
    def test_invalid(self, kwargs):
        with pytest.raises(SpecError):
            ContourSpec(**kwargs)

    def test_with_delta(self):
        assert ContourSpec().with_delta(1.0).delta == 1.0


class TestNegativeIntegers:
    """Values at s = -k from Laurent coefficients"""

    @pytest.mark.parametrize("k", range(6))
    def test_riemann(self, riemann, contour, cfg, k):
        result = value_at_negative_integer(riemann, k, contour, cfg)
        assert result.route == ContinuationRoute.LAURENT
        assert abs(result.complex_value - float(mpmath.zeta(-k))) < 1e-10

    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_character(self, chi4, chi4_model, contour, cfg, k):
        result = value_at_negative_integer(chi4_model, k, contour, cfg)
        expected = -generalized_bernoulli(k + 1, chi4) / (k + 1)
        assert abs(result.complex_value - expected) < 1e-10

    def test_derivative_route(self, contour, cfg):
        model = katz_psi(2)
        for m in (1, 2, 3):
            by_contour = value_at_negative_integer(model, m, contour, cfg).complex_value
            assert abs(value_by_derivative(model, m).complex_value - by_contour) < 1e-10

    def test_radius_independence(self, riemann, cfg):
        small = value_at_negative_integer(riemann, 3, ContourSpec(delta=0.3), cfg)
        large = value_at_negative_integer(riemann, 3, ContourSpec(delta=2.0), cfg)
        assert abs(small.complex_value - large.complex_value) < 1e-10

    def test_radius_reaching_singularity(self, riemann, cfg):
        assert singularity_distance(riemann) == pytest.approx(2 * math.pi)
        with pytest.raises(RadiusError):
            value_at_negative_integer(riemann, 1, ContourSpec(delta=7.0), cfg)

    def test_character_singularities_closer(self, chi4_model):
        assert singularity_distance(chi4_model) == pytest.approx(math.pi / 2)
        with pytest.raises(RadiusError):
            check_radius(chi4_model, 2.0)

    def test_negative_k_rejected(self, riemann):
        with pytest.raises(SpecError):
            value_at_negative_integer(riemann, -1)

    def test_no_closed_form(self):
        with pytest.raises(NoClosedForm):
            value_at_negative_integer(moebius_series(cap=1000), 1)


class TestContinueL:

    @pytest.mark.parametrize("s", [-1.0, 0.0, -2.5, 0.5 + 2j])
    def test_riemann(self, riemann, contour, cfg, s):
        result = continue_L(riemann, s, contour, cfg)
        assert result.route == ContinuationRoute.CONTOUR
        assert abs(result.complex_value - complex(mpmath.zeta(s))) < 1e-9

    def test_pole_at_one(self, riemann, contour, cfg):
        with pytest.raises(PositiveIntegerPole):
            continue_L(riemann, 1.0, contour, cfg)

    def test_character_at_one(self, chi4_model, contour, cfg):
        result = continue_L(chi4_model, 1.0, contour, cfg)
        assert abs(result.complex_value - math.pi / 4) < 1e-9

    def test_overlap(self, chi4_model, contour, cfg):
        for s in overlap_points(chi4_model):
            check = overlap_check(chi4_model, s, contour, cfg)
            assert check.passed, check.abs_error

    def test_product_of_factors(self, contour, cfg):
        model = ideal_count_series(-4, cap=1000)
        result = continue_L(model, -1.0, contour, cfg)
        # zeta(-1) L(-1, chi4) and L(-1, chi4) = 0
        assert abs(result.complex_value) < 1e-9


class TestTruncation:

    @pytest.mark.parametrize("w", [0.3, 0.6])
    def test_value_independent_of_w(self, riemann, contour, cfg, w):
        result = w_truncated_continuation(riemann, w, 1, contour, cfg)
        assert abs(result.complex_value + 1.0 / 12.0) < 1e-9

    def test_transform_depends_on_w(self, riemann, cfg):
        a = truncated_transform(riemann, 0.3, 2.0, cfg)
        b = truncated_transform(riemann, 0.6, 2.0, cfg)
        assert abs(complex(a) - complex(b)) > 1e-3

    def test_w_range(self, riemann):
        with pytest.raises(SpecError):
            w_truncated_continuation(riemann, 1.0, 1)


class TestResidues:

    def test_riemann(self, riemann, contour, cfg):
        assert abs(residue_at_1(riemann, contour, cfg) - 1.0) < 1e-12

    def test_character_has_none(self, chi4_model, contour, cfg):
        assert abs(residue_at_1(chi4_model, contour, cfg)) < 1e-12

    def test_gaussian_field(self, contour, cfg):
        model = ideal_count_series(-4, cap=1000)
        assert abs(residue_at_1(model, contour, cfg) - model.metadata["rho"]) < 1e-9

    def test_from_laurent_data(self, riemann):
        assert residue_from_laurent(riemann) == pytest.approx(1.0)
        # the printed coefficient sum has the opposite sign for z/(1 - z)
        assert laurent_residue_sum(riemann) == pytest.approx(-1.0)

    def test_double_pole(self):
        from citer.core.series import from_rational

        # z/(1-z)^2 has transform zeta(s-1): no pole at s = 1
        model = from_rational([0, 1], [1, -2, 1])
        assert residue_from_laurent(model) == pytest.approx(0.0, abs=1e-15)

    def test_no_laurent_data(self):
        with pytest.raises(NoLaurentData):
            residue_from_laurent(moebius_series(cap=1000))

    @pytest.mark.slow
    def test_boundedness_matches_residue(self, riemann, chi4_model, contour, cfg):
        assert not bound_near_pole(riemann, contour, cfg).bounded
        assert bound_near_pole(chi4_model, contour, cfg).bounded


class TestBernoulli:

    def test_chi4(self, chi4):
        assert generalized_bernoulli(1, chi4) == pytest.approx(-0.5)
        assert generalized_bernoulli(3, chi4) == pytest.approx(1.5)

    def test_chi3(self):
        table = CharacterTable.kronecker(-3)
        assert generalized_bernoulli(1, table) == pytest.approx(-1.0 / 3.0)

    def test_negative_index(self, chi4):
        with pytest.raises(SpecError):
            generalized_bernoulli(-1, chi4)
