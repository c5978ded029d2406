"""
Monodromy of the polylogarithm - Li_s(w) continued along a loop about 1
against the straight path, through the comultiplication formula
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..models.results import MonodromyResult, to_pair
from ..utils.config import QuadratureConfig
from .errors import DominationViolated, NoBranchMatch, SpecError, TechnicalConditionViolated
from .iterated import (
    DEFAULT_TERMS,
    comultiplication_eval,
    path_iterated_integral,
    polylog_integral,
)
from .numerics import DEFAULT_QUADRATURE, Estimate, gamma, principal_log, principal_power
from .paths import DZ_OVER_ONE_MINUS_Z, DZ_OVER_Z, Path, _fsum_complex, concat

logger = logging.getLogger(__name__)

BRANCHES = (0, -1, 1)
# a candidate branch must lie within this multiple of the error budget
MATCH_FACTOR = 10.0


@dataclass(frozen=True)
class MonodromyScenario:
    """
    Li_s(w) along [0 -> eta] [eta -> 1-eps] (loop about 1) [1-eps -> w].
    ``turns`` counts positive loops; 0 gives a path homotopic to [0 -> w].
    """

    s: complex
    w: complex
    eta: float = 0.75
    epsilon: float = 0.02
    terms: int = DEFAULT_TERMS
    turns: int = 1

    def __post_init__(self):
        object.__setattr__(self, "s", complex(self.s))
        object.__setattr__(self, "w", complex(self.w))
        if self.s.real <= 1:
            raise SpecError(f"monodromy scenario needs Re(s) > 1, got s={self.s}")
        if not 0 < abs(self.w) < 1:
            raise SpecError(f"w must lie in the punctured unit disc, got {self.w}")
        if not 0.0 < self.eta < 1.0:
            raise SpecError(f"eta must lie in (0, 1), got {self.eta!r}")
        if not abs(math.log(self.eta)) < abs(principal_log(self.w)):
            raise SpecError(
                f"eta={self.eta:g} needs |log eta| < |log w| = {abs(principal_log(self.w)):.6g}"
            )
        limit = 0.5 * min(abs(1.0 - self.w), 1.0 - self.eta)
        if not 0.0 < self.epsilon < limit:
            raise SpecError(f"epsilon must lie in (0, {limit:.6g}), got {self.epsilon!r}")
        if self.terms < 1:
            raise SpecError("terms must be positive")

    def with_epsilon(self, epsilon: float) -> "MonodromyScenario":
        return MonodromyScenario(self.s, self.w, self.eta, epsilon, self.terms, self.turns)

    def looped_path(self, epsilon: Optional[float] = None) -> Path:
        eps = self.epsilon if epsilon is None else epsilon
        return concat(
            Path.polyline(0.0, self.eta, 1.0 - eps),
            concat(Path.loop(1.0, eps, math.pi, self.turns), Path.straight(1.0 - eps, self.w)),
        )


def direct_polylog(scenario: MonodromyScenario, cfg: Optional[QuadratureConfig] = None) -> Estimate:
    """Li_s(w) along the straight path [0 -> w]"""
    return polylog_integral(scenario.s, scenario.w, cfg=cfg)


def _looped(
    scenario: MonodromyScenario, epsilon: float, cfg: QuadratureConfig
) -> Tuple[Estimate, Tuple[complex, complex]]:
    """The looped value and its n = 0, 1 loop contributions"""
    s = scenario.s
    gamma_path = concat(
        Path.straight(scenario.eta, 1.0 - epsilon), Path.loop(1.0, epsilon, math.pi, scenario.turns)
    )
    delta_path = Path.straight(1.0 - epsilon, scenario.w)
    try:
        split = comultiplication_eval(
            gamma_path, delta_path, DZ_OVER_ONE_MINUS_Z, s, scenario.terms, cfg
        )
    except DominationViolated as e:
        raise TechnicalConditionViolated(
            f"loop at eps={epsilon:g} breaks the domination condition: {e}"
        ) from e

    shift = _fsum_complex(gamma_path.increments(DZ_OVER_Z) + delta_path.increments(DZ_OVER_Z))
    head = path_iterated_integral(
        Path.straight(0.0, scenario.eta), DZ_OVER_ONE_MINUS_Z, DZ_OVER_Z, s, cfg, shift=shift
    )
    value = Estimate(complex(head) + complex(split.rhs), head.error + split.rhs.error)

    # segment 0 of gamma is the line [eta -> 1-eps]; the rest are the loop arcs
    loop_segments = split.segment_terms[1:]
    n0 = _fsum_complex([terms[0] for terms in loop_segments])
    n1 = _fsum_complex([terms[1] for terms in loop_segments]) if scenario.terms >= 1 else 0j
    logger.debug(
        "looped Li_%s(%s) at eps=%g: %r (n=0 loop term %r, n=1 loop term %r)",
        s, scenario.w, epsilon, value, n0, n1,
    )
    return value, (n0, n1)


def looped_polylog(
    scenario: MonodromyScenario,
    cfg: Optional[QuadratureConfig] = None,
    epsilon: Optional[float] = None,
) -> Estimate:
    """
    Li_s(w) along the looped path, assembled from the head [0 -> eta] and
    the comultiplication of [eta -> 1-eps](loop) with [1-eps -> w]

    Raises:
        TechnicalConditionViolated: the running logarithm over the loop is
            not dominated by the logarithm over [1-eps -> w]
    """
    cfg = cfg or DEFAULT_QUADRATURE
    if scenario.turns == 0:
        return direct_polylog(scenario, cfg)
    value, _ = _looped(scenario, scenario.epsilon if epsilon is None else epsilon, cfg)
    return value


def loop_terms(
    scenario: MonodromyScenario, cfg: Optional[QuadratureConfig] = None, epsilon: Optional[float] = None
) -> Tuple[complex, complex]:
    """The n = 0 and n = 1 contributions of the loop arcs"""
    cfg = cfg or DEFAULT_QUADRATURE
    if scenario.turns == 0:
        return 0j, 0j
    _, terms = _looped(scenario, scenario.epsilon if epsilon is None else epsilon, cfg)
    return terms


def predicted_defect(s: complex, w: complex, branch: int = 0, turns: int = 1) -> complex:
    """-(2 pi i/Gamma(s)) log^{s-1}(w) per positive turn, with the power on branch ``branch``"""
    s = complex(s)
    return -turns * 2j * math.pi / gamma(s) * principal_power(principal_log(w), s - 1.0, branch)


def match_branch(
    defect: complex, s: complex, w: complex, budget: float, turns: int = 1
) -> Tuple[int, complex]:
    """
    The branch offset whose prediction lies closest to ``defect``

    Raises:
        NoBranchMatch: no candidate within MATCH_FACTOR times the budget
    """
    candidates: List[Tuple[float, int, complex]] = []
    for b in BRANCHES:
        pred = predicted_defect(s, w, b, turns)
        candidates.append((abs(defect - pred), b, pred))
    distance, branch, pred = min(candidates, key=lambda c: (c[0], abs(c[1])))
    if distance > MATCH_FACTOR * budget:
        raise NoBranchMatch(
            f"defect {defect} misses every branch of the prediction; nearest is off by "
            f"{distance:.3g} with budget {budget:.3g}"
        )
    return branch, pred


def monodromy_defect(
    scenario: MonodromyScenario, cfg: Optional[QuadratureConfig] = None
) -> MonodromyResult:
    """
    looped - direct at eps and eps/2, Richardson-extrapolated, matched
    against the predicted defect on the branches -1, 0, 1
    """
    cfg = cfg or DEFAULT_QUADRATURE
    s, w = scenario.s, scenario.w
    direct = direct_polylog(scenario, cfg)

    if scenario.turns == 0:
        looped_coarse = looped_fine = direct
        terms = (0j, 0j)
    else:
        looped_coarse, terms = _looped(scenario, scenario.epsilon, cfg)
        looped_fine, _ = _looped(scenario, 0.5 * scenario.epsilon, cfg)

    coarse = complex(looped_coarse) - complex(direct)
    fine = complex(looped_fine) - complex(direct)
    defect = 2.0 * fine - coarse
    quadrature = direct.error + looped_coarse.error + looped_fine.error
    spread = abs(fine - coarse) + 3.0 * quadrature

    reference = abs(predicted_defect(s, w, 0, scenario.turns))
    budget = max(spread, math.sqrt(cfg.rel_tol) * max(1.0, reference))
    branch, pred = match_branch(defect, s, w, budget, scenario.turns)
    logger.info("monodromy s=%s w=%s: defect %r, branch %d", s, w, defect, branch)

    return MonodromyResult(
        s=to_pair(s),
        w=to_pair(w),
        direct=to_pair(direct),
        looped=to_pair(looped_fine),
        defect=to_pair(defect),
        predicted=to_pair(pred),
        matched_branch=branch,
        error_budget=budget,
        loop_terms=[to_pair(t) for t in terms],
        epsilon=scenario.epsilon,
        eta=scenario.eta,
        turns=scenario.turns,
    )
