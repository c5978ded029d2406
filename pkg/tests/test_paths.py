"""
Tests for paths and ordinary integration of forms
"""

import cmath
import math

import pytest

from citer.core.errors import DiscontinuousConcat, DivergentIntegral, PathThroughSingularity
from citer.core.paths import (
    DZ,
    DZ_OVER_ONE_MINUS_Z,
    DZ_OVER_Z,
    Arc,
    FormSpec,
    Path,
    concat,
    cumulative_form_integral,
    integrate_form,
    reverse,
)


class TestConstruction:

    def test_line_through_one_rejected(self):
        with pytest.raises(PathThroughSingularity):
            Path.straight(0.5, 1.5)

    def test_arc_through_origin_rejected(self):
        with pytest.raises(PathThroughSingularity):
            Path.loop(0.5, 0.5)

    @pytest.mark.parametrize("start, end", [(0.3, 3.5), (-0.5, 0.5), (2.5, 3.5)])
    def test_arc_sweeping_over_singular_point_rejected(self, start, end):
        # the circle |z - 1/2| = 1/2 meets 0 at angle pi and 1 at angle 0
        with pytest.raises(PathThroughSingularity):
            Arc(0.5, 0.5, start, end)

    def test_arc_on_singular_circle_but_clear_of_it(self):
        arc = Arc(0.5, 0.5, 0.3, 2.5)
        assert Arc(0.5, 0.5, 2.5, 0.3).end == pytest.approx(arc.start)
        path = Path((arc,))
        expected = cmath.log(arc.end / arc.start)
        assert complex(integrate_form(path, DZ_OVER_Z)) == pytest.approx(expected, abs=1e-13)
        expected = -cmath.log((1 - arc.end) / (1 - arc.start))
        assert complex(integrate_form(path, DZ_OVER_ONE_MINUS_Z)) == pytest.approx(expected, abs=1e-13)

    def test_discontinuous_concat(self):
        with pytest.raises(DiscontinuousConcat):
            concat(Path.straight(0.2, 0.5), Path.straight(0.6, 0.7))

    def test_empty_concat_is_identity(self):
        path = Path.straight(0.2, 0.5)
        assert concat(Path(()), path) == path
        assert Path.loop(0.5, 0.2, turns=0).is_empty

    def test_dict_round_trip(self):
        path = concat(Path.straight(0.5, 0.5 + 0.5j), Path.polyline(0.5 + 0.5j, -0.5 + 0.5j))
        assert Path.from_dict(path.to_dict()) == path


class TestStandardForms:
    """Exact per-segment increments"""

    def test_log_two(self):
        assert integrate_form(Path.straight(0.5, 1.0), DZ_OVER_Z) == pytest.approx(math.log(2))
        assert integrate_form(Path.straight(0.0, 0.5), DZ_OVER_ONE_MINUS_Z) == pytest.approx(math.log(2))

    def test_loop_about_one(self):
        loop = Path.loop(1.0, 0.5, start_angle=math.pi)
        assert integrate_form(loop, DZ_OVER_ONE_MINUS_Z) == pytest.approx(-2j * math.pi)
        assert abs(integrate_form(loop, DZ_OVER_Z)) < 1e-14

    def test_loops_accumulate(self):
        double = Path.loop(0.0, 0.5, turns=2)
        assert integrate_form(double, DZ_OVER_Z) == pytest.approx(4j * math.pi)
        negative = Path.loop(0.0, 0.5, turns=-1)
        assert integrate_form(negative, DZ_OVER_Z) == pytest.approx(-2j * math.pi)

    def test_dz_is_displacement(self):
        path = Path.polyline(0.2, 0.2 + 1j, -0.3 + 1j)
        assert integrate_form(path, DZ) == pytest.approx(-0.5 + 1j)

    def test_reverse_negates(self):
        path = concat(Path.straight(0.5, 0.5 + 0.5j), Path.loop(0.4 + 0.5j, 0.1))
        forward = integrate_form(path, DZ_OVER_ONE_MINUS_Z)
        backward = integrate_form(reverse(path), DZ_OVER_ONE_MINUS_Z)
        assert complex(backward) == pytest.approx(-complex(forward))

    def test_divergent_endpoint(self):
        with pytest.raises(DivergentIntegral):
            integrate_form(Path.straight(0.0, 0.5), DZ_OVER_Z)

    def test_cumulative_tracks_branch(self):
        b = cumulative_form_integral(Path.loop(0.0, 0.5), DZ_OVER_Z)
        assert b(0.5) == pytest.approx(1j * math.pi)
        assert b(1.0) == pytest.approx(2j * math.pi)


class TestWeightedForm:

    def test_riemann_weighted_form(self, riemann, cfg):
        # F_Q(z) dz/z = dz/(1 - z)
        value = integrate_form(Path.straight(0.1, 0.5), FormSpec.weighted(riemann), cfg)
        assert abs(value - math.log(0.9 / 0.5)) < 1e-10

    def test_model_only_with_weighted_kind(self, riemann):
        with pytest.raises(ValueError):
            FormSpec(DZ.kind, model=riemann)
