"""
Tests for polylogarithm monodromy about z = 1
"""

import math

import mpmath
import pytest

from citer.core.errors import NoBranchMatch, SpecError
from citer.core.monodromy import (
    MonodromyScenario,
    direct_polylog,
    looped_polylog,
    match_branch,
    monodromy_defect,
    predicted_defect,
)
from citer.models.results import MonodromyResult


class TestScenario:

    def test_defaults(self):
        scenario = MonodromyScenario(2.0, 0.5)
        assert scenario.w == 0.5 + 0j
        assert (scenario.eta, scenario.epsilon, scenario.turns) == (0.75, 0.02, 1)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"s": 1.0, "w": 0.5},
            {"s": 2.0, "w": 0.0},
            {"s": 2.0, "w": 1.5},
            {"s": 2.0, "w": 0.5, "eta": 0.3},
            {"s": 2.0, "w": 0.5, "eta": 1.0},
            {"s": 2.0, "w": 0.5, "epsilon": 0.2},
            {"s": 2.0, "w": 0.5, "terms": 0},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(SpecError):
            MonodromyScenario(**kwargs)

    def test_looped_path_shape(self):
        path = MonodromyScenario(2.0, 0.5, turns=2).looped_path()
        assert path.start == 0
        assert path.end == pytest.approx(0.5)
        assert len(path.segments) == 5


class TestPrediction:

    def test_dilogarithm_defect(self):
        assert predicted_defect(2, 0.5) == pytest.approx(2j * math.pi * math.log(2))

    def test_turns_scale_linearly(self):
        w = 0.4 + 0.2j
        assert predicted_defect(2.5, w, turns=3) == pytest.approx(3 * predicted_defect(2.5, w))

    def test_integer_order_ties_break_to_zero(self):
        defect = predicted_defect(3, 0.5)
        branch, pred = match_branch(defect, 3, 0.5, budget=1e-12)
        assert branch == 0
        assert pred == pytest.approx(defect)

    def test_non_integer_order_picks_branch(self):
        w = 0.4 + 0.2j
        defect = predicted_defect(2.5, w, branch=1)
        branch, _ = match_branch(defect, 2.5, w, budget=1e-12)
        assert branch == 1

    def test_no_match(self):
        with pytest.raises(NoBranchMatch):
            match_branch(1.0 + 0j, 2.0, 0.5, budget=1e-6)


class TestLoopedValues:

    def test_zero_turns_is_direct(self, cfg):
        scenario = MonodromyScenario(2.5, 0.4 + 0.2j, turns=0)
        assert looped_polylog(scenario, cfg) == direct_polylog(scenario, cfg)
        result = monodromy_defect(scenario, cfg)
        assert result.defect == (0.0, 0.0)
        assert result.matched_branch == 0

    def test_direct_matches_mpmath(self, cfg):
        scenario = MonodromyScenario(2.5, 0.4 + 0.2j)
        assert abs(direct_polylog(scenario, cfg) - complex(mpmath.polylog(2.5, 0.4 + 0.2j))) < 1e-9

    @pytest.mark.slow
    @pytest.mark.parametrize("s, w", [(2.0, 0.5 + 0j), (3.0, 0.5 + 0j), (2.5, 0.4 + 0.2j)])
    def test_defect_matches_prediction(self, cfg, s, w):
        result = monodromy_defect(MonodromyScenario(s, w), cfg)
        assert isinstance(result, MonodromyResult)
        defect = complex(*result.defect)
        assert abs(defect - complex(*result.predicted)) <= 10 * result.error_budget
        assert result.matched_branch == 0
