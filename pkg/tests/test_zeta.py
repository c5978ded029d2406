"""
Tests for the special functions built on the iterated-integral transform
"""

import math

import mpmath
import numpy as np
import pytest

from citer.core.errors import ConvergenceConstraint, DepthUnsupported, SpecError
from citer.core.series import CharacterTable
from citer.core.zeta import (
    ZetaKind,
    ZetaRequest,
    completed_Z,
    completed_Z_routes,
    dedekind_zeta_transform,
    dirichlet_L,
    dirichlet_L_gap,
    dirichlet_series_oracle,
    hurwitz_zeta,
    mzv,
    zeta,
)

TOL = 1e-9


class TestRiemannZeta:

    @pytest.mark.parametrize("s", [2.0, 3.0, 4.0, 1.5, 2 + 3j, 5.5 - 1j])
    def test_matches_mpmath(self, s, cfg):
        expected = complex(mpmath.zeta(s))
        assert abs(zeta(s, cfg) - expected) < TOL * max(1.0, abs(expected))

    def test_error_estimate_reported(self, cfg):
        value = zeta(2.0, cfg)
        assert 0.0 <= value.error < 1e-8

    def test_pole_is_a_convergence_wall(self, cfg):
        with pytest.raises(ConvergenceConstraint):
            zeta(1.0, cfg)
        with pytest.raises(ConvergenceConstraint):
            zeta(0.5 + 14j, cfg)


class TestCompletedZeta:

    @pytest.mark.parametrize("s", [2.0, 2.5, 4.0])
    def test_routes_agree(self, s, cfg):
        duplicated, product = completed_Z_routes(s, cfg)
        assert abs(duplicated - product) < 1e-9

    def test_value_at_two(self, cfg):
        # pi^{-1} Gamma(1) zeta(2) = pi/6
        assert abs(completed_Z(2.0, cfg) - math.pi / 6) < TOL

    def test_needs_right_half_plane(self, cfg):
        with pytest.raises(ConvergenceConstraint):
            completed_Z(0.5, cfg)


class TestDirichletL:

    def test_catalan(self, chi4, cfg):
        assert abs(dirichlet_L(2.0, chi4, cfg) - float(mpmath.catalan)) < TOL

    def test_chi4_at_three(self, chi4, cfg):
        assert abs(dirichlet_L(3.0, chi4, cfg) - math.pi**3 / 32) < TOL

    def test_chi3_against_partial_sums(self, cfg):
        table = CharacterTable.kronecker(-3)
        coefficients = np.array([0] + [table(n) for n in range(1, 200001)])
        expected = dirichlet_series_oracle(coefficients, 3.0)
        assert abs(dirichlet_L(3.0, table, cfg) - expected) < 1e-9

    def test_gap_route(self, chi4, cfg):
        assert abs(dirichlet_L_gap(3.0, chi4, 2, cfg) - math.pi**3 / 32) < 1e-7


class TestMultipleZeta:

    @pytest.mark.slow
    def test_euler_relation(self, cfg):
        assert abs(mzv((2, 1), cfg) - float(mpmath.zeta(3))) < 1e-7

    @pytest.mark.slow
    def test_two_two(self, cfg):
        # zeta(2, 2) = (zeta(2)^2 - zeta(4)) / 2 = pi^4/120
        assert abs(mzv((2, 2), cfg) - math.pi**4 / 120) < 1e-7

    @pytest.mark.slow
    @pytest.mark.parametrize("a, b", [(3, 1), (3, 2), (2, 3)])
    def test_depth_two_against_double_sum(self, cfg, a, b):
        # sum_{n > m} n^-a m^-b summed over m with the inner tail as a Hurwitz zeta
        expected = mpmath.nsum(lambda m: m ** -b * mpmath.zeta(a, m + 1), [1, mpmath.inf])
        assert abs(mzv((a, b), cfg) - float(expected)) < 1e-6

    @pytest.mark.slow
    def test_stuffle_two_three(self, cfg):
        lhs = complex(zeta(2, cfg)) * complex(zeta(3, cfg))
        rhs = complex(mzv((2, 3), cfg)) + complex(mzv((3, 2), cfg)) + complex(zeta(5, cfg))
        assert abs(lhs - rhs) < 1e-6
        assert abs(lhs - float(mpmath.zeta(2) * mpmath.zeta(3))) < 1e-7

    def test_depth_one_is_zeta(self, cfg):
        assert abs(mzv((3,), cfg) - float(mpmath.zeta(3))) < TOL

    def test_depth_three(self, cfg):
        with pytest.raises(DepthUnsupported):
            mzv((3, 2, 1), cfg)

    def test_wall(self, cfg):
        with pytest.raises(ConvergenceConstraint):
            mzv((1, 2), cfg)


class TestHurwitz:

    @pytest.mark.parametrize("s, z", [(2.0, 1.0), (2.0, 0.5), (3.0, 2.5), (2.5 + 1j, 0.75)])
    def test_matches_mpmath(self, s, z, cfg):
        expected = complex(mpmath.zeta(s, z))
        assert abs(hurwitz_zeta(s, z, cfg) - expected) < 1e-8 * max(1.0, abs(expected))

    def test_shift_must_be_positive(self, cfg):
        with pytest.raises(ConvergenceConstraint):
            hurwitz_zeta(2.0, -0.5, cfg)


class TestDedekind:

    def test_gaussian_field(self, cfg):
        expected = math.pi**2 / 6 * float(mpmath.catalan)
        assert abs(dedekind_zeta_transform(-4, 2.0, cfg, cap=10**4) - expected) < 1e-8

    def test_eisenstein_field(self, cfg):
        table = CharacterTable.kronecker(-3)
        expected = float(mpmath.zeta(3)) * complex(dirichlet_L(3.0, table, cfg))
        assert abs(dedekind_zeta_transform(-3, 3.0, cfg, cap=10**4) - expected) < 1e-8


class TestZetaRequest:

    def test_dispatch(self, chi4, cfg):
        request = ZetaRequest(ZetaKind.DIRICHLET, (2.0,), character=chi4)
        assert abs(request.evaluate(cfg) - float(mpmath.catalan)) < TOL

    def test_kind_from_string(self, cfg):
        request = ZetaRequest("polylog", (2,), w=0.5)
        assert request.kind is ZetaKind.POLYLOG
        assert abs(request.evaluate(cfg) - (math.pi**2 / 12 - math.log(2) ** 2 / 2)) < TOL

    @pytest.mark.parametrize("kind", [ZetaKind.DIRICHLET, ZetaKind.HURWITZ, ZetaKind.POLYLOG, ZetaKind.DEDEKIND])
    def test_missing_parameters(self, kind):
        with pytest.raises(SpecError):
            ZetaRequest(kind, (2.0,))

    def test_single_exponent_kinds(self, cfg):
        with pytest.raises(SpecError):
            ZetaRequest(ZetaKind.RIEMANN, (2.0, 1.0)).evaluate(cfg)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            ZetaRequest("bernoulli", (2.0,))
