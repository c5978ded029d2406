"""
Result models for citer - evaluation values, verification checks and reports
Complex numbers travel as [re, im] pairs.
"""

import math
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

ComplexPair = Tuple[float, float]


def to_pair(value: complex) -> ComplexPair:
    value = complex(value)
    return (float(value.real), float(value.imag))


def from_pair(pair: ComplexPair) -> complex:
    return complex(pair[0], pair[1])


class CheckStatus(str, Enum):
    """Outcome of a verification check"""
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


class ContinuationRoute(str, Enum):
    """How a continued value was obtained"""
    CONTOUR = "contour"
    LAURENT = "laurent"
    DERIVATIVE = "derivative"


class CheckResult(BaseModel):
    """A computed value compared against its expected value"""

    name: str = Field(..., description="Check identifier")
    computed: ComplexPair = Field(..., description="Value produced by the engine")
    expected: ComplexPair = Field(..., description="Oracle or second-route value")
    abs_error: float = Field(..., description="|computed - expected|")
    tolerance: float = Field(..., ge=0.0, description="Pass threshold on abs_error")
    status: CheckStatus = Field(..., description="pass, fail or skipped")
    error_estimate: float = Field(0.0, ge=0.0, description="Engine's own error estimate")
    runtime_ms: float = Field(0.0, ge=0.0, description="Wall time of the check")
    provenance: str = Field("", description="Property or identity the check exercises")
    note: Optional[str] = Field(None, description="Free-form remark, e.g. why a check is skipped")

    @field_validator('status')
    @classmethod
    def status_matches_error(cls, v, info):
        if v == CheckStatus.SKIPPED:
            return v
        abs_error = info.data.get('abs_error')
        tolerance = info.data.get('tolerance')
        if abs_error is None or tolerance is None:
            return v
        within = abs_error <= tolerance
        if within != (v == CheckStatus.PASS):
            raise ValueError('status must be pass exactly when abs_error <= tolerance')
        return v

    @classmethod
    def from_values(
        cls,
        name: str,
        computed: complex,
        expected: complex,
        tolerance: float,
        *,
        error_estimate: float = 0.0,
        provenance: str = "",
        note: Optional[str] = None,
    ) -> "CheckResult":
        """Build a check, deciding pass/fail from |computed - expected|"""
        difference = abs(complex(computed) - complex(expected))
        if math.isnan(difference):
            difference = math.inf
        return cls(
            name=name,
            computed=to_pair(computed),
            expected=to_pair(expected),
            abs_error=difference,
            tolerance=tolerance,
            status=CheckStatus.PASS if difference <= tolerance else CheckStatus.FAIL,
            error_estimate=float(error_estimate) if math.isfinite(error_estimate) else 0.0,
            provenance=provenance,
            note=note,
        )

    @classmethod
    def skipped(
        cls,
        name: str,
        computed: complex,
        expected: complex,
        *,
        provenance: str = "",
        note: Optional[str] = None,
    ) -> "CheckResult":
        """A check reported but not judged"""
        difference = abs(complex(computed) - complex(expected))
        return cls(
            name=name,
            computed=to_pair(computed),
            expected=to_pair(expected),
            abs_error=difference if math.isfinite(difference) else math.inf,
            tolerance=0.0,
            status=CheckStatus.SKIPPED,
            provenance=provenance,
            note=note,
        )

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASS

    def to_dict(self, timing: bool = False) -> Dict[str, Any]:
        data = {
            "name": self.name,
            "computed": list(self.computed),
            "expected": list(self.expected),
            "abs_error": self.abs_error,
            "tolerance": self.tolerance,
            "status": self.status.value,
            "error_estimate": self.error_estimate,
            "provenance": self.provenance,
        }
        if self.note is not None:
            data["note"] = self.note
        if timing:
            data["runtime_ms"] = self.runtime_ms
        return data


class VerificationReport(BaseModel):
    """Results of one verification suite run"""

    suite: str = Field(..., description="Suite name")
    results: List[CheckResult] = Field(default_factory=list, description="Checks in suite order")
    config: Dict[str, Any] = Field(default_factory=dict, description="Quadrature configuration echo")
    versions: Dict[str, str] = Field(default_factory=dict, description="Engine and library versions")

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.status == CheckStatus.PASS)

    @property
    def failed(self) -> int:
        return sum(1 for r in self.results if r.status == CheckStatus.FAIL)

    @property
    def skipped(self) -> int:
        return sum(1 for r in self.results if r.status == CheckStatus.SKIPPED)

    @property
    def all_passed(self) -> bool:
        return self.failed == 0

    def to_dict(self, timing: bool = False) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "summary": {
                "total": len(self.results),
                "passed": self.passed,
                "failed": self.failed,
                "skipped": self.skipped,
            },
            "results": [r.to_dict(timing) for r in self.results],
            "config": self.config,
            "versions": self.versions,
        }


class EvalResult(BaseModel):
    """Value printed by `citer eval` and `citer transform`"""

    kind: str = Field(..., description="What was evaluated")
    value: ComplexPair = Field(..., description="Computed value")
    error_estimate: float = Field(0.0, ge=0.0, description="Absolute error estimate")
    runtime_ms: float = Field(0.0, ge=0.0, description="Wall time")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": list(self.value),
            "error_estimate": self.error_estimate,
            "runtime_ms": self.runtime_ms,
        }


class ContinuationResult(BaseModel):
    """An analytically continued value and the route that produced it"""

    value: ComplexPair = Field(..., description="Continued value")
    route: ContinuationRoute = Field(..., description="contour, laurent or derivative")
    error_estimate: float = Field(0.0, ge=0.0, description="Absolute error estimate")
    s: Optional[ComplexPair] = Field(None, description="Point of evaluation")
    label: str = Field("", description="Series model label")

    @property
    def complex_value(self) -> complex:
        return from_pair(self.value)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "value": list(self.value),
            "route": self.route.value,
            "error_estimate": self.error_estimate,
            "label": self.label,
        }
        if self.s is not None:
            data["s"] = list(self.s)
        return data


class MonodromyResult(BaseModel):
    """Polylogarithm along a loop about 1 compared with the straight path"""

    s: ComplexPair = Field(..., description="Polylogarithm order")
    w: ComplexPair = Field(..., description="Evaluation point")
    direct: ComplexPair = Field(..., description="Li_s(w) along [0 -> w]")
    looped: ComplexPair = Field(..., description="Li_s(w) along the looped path")
    defect: ComplexPair = Field(..., description="looped - direct, Richardson-extrapolated")
    predicted: ComplexPair = Field(..., description="-(2 pi i / Gamma(s)) log^{s-1} w on the matched branch")
    matched_branch: int = Field(..., description="Branch offset of the matched power")
    error_budget: float = Field(..., ge=0.0, description="Budget the match was judged against")
    loop_terms: List[ComplexPair] = Field(default_factory=list, description="n = 0, 1 loop contributions")
    epsilon: float = Field(..., gt=0.0, description="Loop radius about 1")
    eta: float = Field(..., gt=0.0, lt=1.0, description="Split point on [0, 1]")
    turns: int = Field(1, description="Signed number of loops")

    @field_validator('matched_branch')
    @classmethod
    def validate_branch(cls, v):
        if v not in (-1, 0, 1):
            raise ValueError('matched_branch must be -1, 0 or 1')
        return v

    def to_dict(self) -> Dict[str, Any]:
        return {
            "s": list(self.s),
            "w": list(self.w),
            "direct": list(self.direct),
            "looped": list(self.looped),
            "defect": list(self.defect),
            "predicted": list(self.predicted),
            "matched_branch": self.matched_branch,
            "error_budget": self.error_budget,
            "loop_terms": [list(t) for t in self.loop_terms],
            "epsilon": self.epsilon,
            "eta": self.eta,
            "turns": self.turns,
        }
