"""
Paths and forms - piecewise-smooth paths in C minus {0, 1} and ordinary
integration of dz/z, dz/(1-z), dz and F(z) dz/z along them.

Logarithms are tracked by accumulating exact per-segment increments; nothing
is ever re-evaluated on the principal branch of the total.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..utils.config import QuadratureConfig
from .errors import (
    DiscontinuousConcat,
    DivergentIntegral,
    PathThroughSingularity,
    SpecError,
)
from .numerics import DEFAULT_QUADRATURE, Estimate, quad_finite
from .series import SeriesModel

logger = logging.getLogger(__name__)

_JOIN_TOL = 1e-12
_ON_CURVE_TOL = 1e-14


class FormKind(str, Enum):
    """The standard 1-forms"""
    DZ_OVER_Z = "dz/z"
    DZ_OVER_ONE_MINUS_Z = "dz/(1-z)"
    DZ = "dz"
    WEIGHTED = "F(z)dz/z"


@dataclass(frozen=True, eq=False)
class FormSpec:
    """A 1-form: one of the standard kinds, or F(z) dz/z for a series model F"""

    kind: FormKind
    model: Optional[SeriesModel] = None

    def __post_init__(self):
        if (self.kind == FormKind.WEIGHTED) != (self.model is not None):
            raise ValueError("a series model goes with the weighted form and only with it")

    @classmethod
    def weighted(cls, model: SeriesModel) -> "FormSpec":
        return cls(FormKind.WEIGHTED, model)

    @property
    def is_standard(self) -> bool:
        return self.kind != FormKind.WEIGHTED

    def density(self, z: np.ndarray) -> np.ndarray:
        """omega/dz at the points z"""
        z = np.asarray(z, dtype=complex)
        if self.kind == FormKind.DZ_OVER_Z:
            return 1.0 / z
        if self.kind == FormKind.DZ_OVER_ONE_MINUS_Z:
            return 1.0 / (1.0 - z)
        if self.kind == FormKind.DZ:
            return np.ones_like(z)
        return np.asarray(self.model.eval(z), dtype=complex) / z

    def __repr__(self) -> str:
        if self.kind == FormKind.WEIGHTED:
            return f"FormSpec({self.model.label} dz/z)"
        return f"FormSpec({self.kind.value})"


DZ_OVER_Z = FormSpec(FormKind.DZ_OVER_Z)
DZ_OVER_ONE_MINUS_Z = FormSpec(FormKind.DZ_OVER_ONE_MINUS_Z)
DZ = FormSpec(FormKind.DZ)


def _log1p(w):
    return np.log1p(np.asarray(w, dtype=complex))


def _check_singular_endpoint(point: complex, form: FormSpec) -> None:
    if form.kind == FormKind.DZ_OVER_Z and point == 0:
        raise DivergentIntegral("dz/z is not integrable at the endpoint 0")
    if form.kind == FormKind.DZ_OVER_ONE_MINUS_Z and point == 1:
        raise DivergentIntegral("dz/(1-z) is not integrable at the endpoint 1")


@dataclass(frozen=True)
class Line:
    """Straight segment z(t) = start + t (end - start), t in [0, 1]"""

    start: complex
    end: complex

    def __post_init__(self):
        object.__setattr__(self, "start", complex(self.start))
        object.__setattr__(self, "end", complex(self.end))
        for p in (0j, 1 + 0j):
            if self._interior_contains(p):
                raise PathThroughSingularity(f"line {self.start} -> {self.end} passes through {p}")

    def _interior_contains(self, p: complex) -> bool:
        delta = self.end - self.start
        if delta == 0:
            return False
        t = ((p - self.start) / delta).real
        if not 0 < t < 1:
            return False
        return abs(self.start + t * delta - p) <= _ON_CURVE_TOL * max(1.0, abs(delta))

    @property
    def delta(self) -> complex:
        return self.end - self.start

    def point(self, t) -> np.ndarray:
        return self.start + np.asarray(t, dtype=float) * self.delta

    def derivative(self, t) -> np.ndarray:
        return np.full(np.shape(t), self.delta, dtype=complex)

    def reversed(self) -> "Line":
        return Line(self.end, self.start)

    def _canonical(self) -> bool:
        return (self.start.real, self.start.imag) <= (self.end.real, self.end.imag)

    def increment(self, form: FormSpec) -> complex:
        """Exact integral of a standard form over the whole segment"""
        if not self._canonical():
            return -self.reversed().increment(form)
        return complex(self.partial(form, np.array([0.0]), np.array([1.0]))[0])

    def partial(self, form: FormSpec, t0, t1) -> np.ndarray:
        """Integral of a standard form from t0 to t1 (vectorised)"""
        t0 = np.asarray(t0, dtype=float)
        t1 = np.asarray(t1, dtype=float)
        delta = self.delta
        if form.kind == FormKind.DZ:
            return (t1 - t0) * delta + 0j
        z0 = self.point(t0)
        if form.kind == FormKind.DZ_OVER_Z:
            if np.any(z0 == 0):
                raise DivergentIntegral("dz/z is not integrable at the endpoint 0")
            return _log1p((t1 - t0) * delta / z0)
        if form.kind == FormKind.DZ_OVER_ONE_MINUS_Z:
            if np.any(z0 == 1):
                raise DivergentIntegral("dz/(1-z) is not integrable at the endpoint 1")
            return -_log1p(-(t1 - t0) * delta / (1.0 - z0))
        raise ValueError("weighted forms have no closed-form increment")

    def remaining(self, form: FormSpec, t, one_minus_t=None) -> np.ndarray:
        """
        Integral from t to the end of the segment. Passing the exact 1 - t
        keeps full relative accuracy as t -> 1.
        """
        t = np.asarray(t, dtype=float)
        rest = 1.0 - t if one_minus_t is None else np.asarray(one_minus_t, dtype=float)
        delta = self.delta
        if form.kind == FormKind.DZ:
            return rest * delta + 0j
        z = np.where(t <= 0.5, self.start + t * delta, self.end - rest * delta)
        if form.kind == FormKind.DZ_OVER_Z:
            if self.end == 0:
                raise DivergentIntegral("dz/z is not integrable at the endpoint 0")
            with np.errstate(divide="ignore", invalid="ignore"):
                return _log1p(rest * delta / z)
        if form.kind == FormKind.DZ_OVER_ONE_MINUS_Z:
            if self.end == 1:
                raise DivergentIntegral("dz/(1-z) is not integrable at the endpoint 1")
            with np.errstate(divide="ignore", invalid="ignore"):
                return -_log1p(-rest * delta / (1.0 - z))
        raise ValueError("weighted forms have no closed-form increment")

    def to_dict(self) -> Dict[str, Any]:
        return {"line": [[self.start.real, self.start.imag], [self.end.real, self.end.imag]]}


@dataclass(frozen=True)
class Arc:
    """Circular arc z = center + radius exp(i theta), theta from angle_start to angle_end"""

    center: complex
    radius: float
    angle_start: float
    angle_end: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "angle_start", float(self.angle_start))
        object.__setattr__(self, "angle_end", float(self.angle_end))
        if self.radius <= 0:
            raise SpecError("arc radius must be positive")
        for p in (0j, 1 + 0j):
            if self._sweeps_over(p):
                raise PathThroughSingularity(f"arc passes through {p}")

    def _sweeps_over(self, p: complex) -> bool:
        if abs(abs(p - self.center) - self.radius) > _ON_CURVE_TOL * max(1.0, self.radius):
            return False
        sweep = self.angle_end - self.angle_start
        if abs(sweep) >= 2 * math.pi:
            return True
        low = min(self.angle_start, self.angle_end)
        # angle of p measured from the lower end of the sweep, in [0, 2 pi)
        rel = p - self.center
        offset = (math.atan2(rel.imag, rel.real) - low) % (2 * math.pi)
        slack = _ON_CURVE_TOL * max(1.0, 1.0 / self.radius)
        return offset <= abs(sweep) + slack or offset >= 2 * math.pi - slack

    @property
    def sweep(self) -> float:
        return self.angle_end - self.angle_start

    @property
    def start(self) -> complex:
        return complex(self.point(0.0))

    @property
    def end(self) -> complex:
        return complex(self.point(1.0))

    def angle(self, t) -> np.ndarray:
        return self.angle_start + np.asarray(t, dtype=float) * self.sweep

    def point(self, t) -> np.ndarray:
        return self.center + self.radius * np.exp(1j * self.angle(t))

    def derivative(self, t) -> np.ndarray:
        return 1j * self.sweep * self.radius * np.exp(1j * self.angle(t))

    def reversed(self) -> "Arc":
        return Arc(self.center, self.radius, self.angle_end, self.angle_start)

    @staticmethod
    def _log_between(center: complex, radius: float, theta0, dtheta) -> np.ndarray:
        """Integral of dw/w over w = center + radius exp(i theta), theta0 -> theta0 + dtheta"""
        theta0 = np.asarray(theta0, dtype=float)
        dtheta = np.asarray(dtheta, dtype=float)
        # exp(i(theta0 + dtheta)) - exp(i theta0) without cancellation
        chord = 2j * np.exp(1j * (theta0 + 0.5 * dtheta)) * np.sin(0.5 * dtheta)
        if abs(center) > radius:
            u = radius / center
            return _log1p(u * chord / (1.0 + u * np.exp(1j * theta0)))
        # origin enclosed: log w = log r + i theta + Log(1 + (c/r) exp(-i theta))
        v = center / radius
        back = -2j * np.exp(-1j * (theta0 + 0.5 * dtheta)) * np.sin(0.5 * dtheta)
        return 1j * dtheta + _log1p(v * back / (1.0 + v * np.exp(-1j * theta0)))

    def partial(self, form: FormSpec, t0, t1) -> np.ndarray:
        t0 = np.asarray(t0, dtype=float)
        t1 = np.asarray(t1, dtype=float)
        return self._partial(form, self.angle(t0), (t1 - t0) * self.sweep)

    def _partial(self, form: FormSpec, theta0, dtheta) -> np.ndarray:
        if form.kind == FormKind.DZ:
            return self.radius * 2j * np.exp(1j * (theta0 + 0.5 * dtheta)) * np.sin(0.5 * dtheta)
        if form.kind == FormKind.DZ_OVER_Z:
            return self._log_between(self.center, self.radius, theta0, dtheta)
        if form.kind == FormKind.DZ_OVER_ONE_MINUS_Z:
            # 1 - z runs over the circle about 1 - center with angles shifted by pi
            return -self._log_between(1.0 - self.center, self.radius, np.asarray(theta0) + np.pi, dtheta)
        raise ValueError("weighted forms have no closed-form increment")

    def _canonical(self) -> bool:
        return self.angle_start <= self.angle_end

    def increment(self, form: FormSpec) -> complex:
        if not self._canonical():
            return -self.reversed().increment(form)
        return complex(np.asarray(self.partial(form, np.array([0.0]), np.array([1.0])))[0])

    def remaining(self, form: FormSpec, t, one_minus_t=None) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        rest = 1.0 - t if one_minus_t is None else np.asarray(one_minus_t, dtype=float)
        dtheta = rest * self.sweep
        return self._partial(form, self.angle_end - dtheta, dtheta)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "arc": {
                "center": [self.center.real, self.center.imag],
                "radius": self.radius,
                "from": self.angle_start,
                "to": self.angle_end,
            }
        }


PathSegment = Union[Line, Arc]


def _fsum_complex(values: Sequence[complex]) -> complex:
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


@dataclass(frozen=True)
class Path:
    """
    Concatenation of segments, each traversed on an equal share of [0, 1]
    """

    segments: Tuple[PathSegment, ...] = field(default_factory=tuple)

    def __post_init__(self):
        segments = tuple(self.segments)
        object.__setattr__(self, "segments", segments)
        for left, right in zip(segments, segments[1:]):
            gap = abs(left.end - right.start)
            if gap > _JOIN_TOL * max(1.0, abs(left.end)):
                raise DiscontinuousConcat(
                    f"segment ending at {left.end} does not meet segment starting at {right.start}"
                )

    # -- constructors -------------------------------------------------------

    @classmethod
    def straight(cls, start: complex, end: complex) -> "Path":
        return cls((Line(start, end),))

    @classmethod
    def polyline(cls, *points: complex) -> "Path":
        return cls(tuple(Line(a, b) for a, b in zip(points, points[1:])))

    @classmethod
    def loop(cls, center: complex, radius: float, start_angle: float = 0.0, turns: int = 1) -> "Path":
        """Positively oriented loop(s) about ``center`` starting at angle ``start_angle``"""
        if turns == 0:
            return cls(())
        arcs = tuple(
            Arc(center, radius, start_angle + 2 * math.pi * j, start_angle + 2 * math.pi * (j + 1))
            if turns > 0
            else Arc(center, radius, start_angle - 2 * math.pi * j, start_angle - 2 * math.pi * (j + 1))
            for j in range(abs(turns))
        )
        return cls(arcs)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Path":
        """Create a path from its JSON specification"""
        from .specs import parse_complex

        try:
            raw_segments = data["segments"]
        except (KeyError, TypeError) as e:
            raise SpecError("path spec needs a 'segments' list") from e
        segments: List[PathSegment] = []
        for raw in raw_segments:
            if not isinstance(raw, dict) or len(raw) != 1:
                raise SpecError(f"segment spec must have exactly one of 'line'/'arc': {raw!r}")
            if "line" in raw:
                start, end = raw["line"]
                segments.append(Line(parse_complex(start), parse_complex(end)))
            elif "arc" in raw:
                arc = raw["arc"]
                try:
                    segments.append(
                        Arc(parse_complex(arc["center"]), float(arc["radius"]), float(arc["from"]), float(arc["to"]))
                    )
                except (KeyError, TypeError, ValueError) as e:
                    raise SpecError(f"malformed arc spec: {arc!r}") from e
            else:
                raise SpecError(f"unknown segment kind: {raw!r}")
        return cls(tuple(segments))

    def to_dict(self) -> Dict[str, Any]:
        return {"segments": [segment.to_dict() for segment in self.segments]}

    # -- structure ----------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.segments

    @property
    def start(self) -> complex:
        if self.is_empty:
            raise ValueError("empty path has no start")
        return self.segments[0].start

    @property
    def end(self) -> complex:
        if self.is_empty:
            raise ValueError("empty path has no end")
        return self.segments[-1].end

    def reverse(self) -> "Path":
        return reverse(self)

    def concat(self, other: "Path") -> "Path":
        return concat(self, other)

    def _locate(self, t: float) -> Tuple[int, float]:
        m = len(self.segments)
        if t >= 1.0:
            return m - 1, 1.0
        j = min(int(t * m), m - 1)
        return j, t * m - j

    def point(self, t: float) -> complex:
        j, local = self._locate(t)
        return complex(self.segments[j].point(local))

    def sample_points(self, count: int) -> np.ndarray:
        """``count`` points spread evenly in the path parameter, endpoints included"""
        return np.array([self.point(t) for t in np.linspace(0.0, 1.0, count)])

    # -- standard forms -----------------------------------------------------

    def increments(self, form: FormSpec) -> List[complex]:
        """Exact integral of a standard form over each segment"""
        if not form.is_standard:
            raise ValueError("increments need a standard form")
        if not self.is_empty:
            _check_singular_endpoint(self.start, form)
            _check_singular_endpoint(self.end, form)
        return [segment.increment(form) for segment in self.segments]

    def tail_sums(self, form: FormSpec) -> List[complex]:
        """For each segment, the integral over all later segments"""
        incs = self.increments(form)
        return [_fsum_complex(incs[j + 1:]) for j in range(len(incs))]

    def remaining(self, form: FormSpec, j: int, t_local, one_minus_t=None) -> np.ndarray:
        """Integral from local parameter t on segment j to the end of the path"""
        if not form.is_standard:
            raise ValueError("remaining needs a standard form")
        later = _fsum_complex([seg.increment(form) for seg in self.segments[j + 1:]])
        return np.asarray(self.segments[j].remaining(form, t_local, one_minus_t)) + later


def reverse(path: Path) -> Path:
    """gamma^{-1}(t) = gamma(1 - t)"""
    return Path(tuple(segment.reversed() for segment in reversed(path.segments)))


def concat(a: Path, b: Path) -> Path:
    """
    Path a followed by path b

    Raises:
        DiscontinuousConcat: a does not end where b starts
    """
    if a.is_empty:
        return b
    if b.is_empty:
        return a
    return Path(a.segments + b.segments)


def integrate_form(path: Path, form: FormSpec, cfg: Optional[QuadratureConfig] = None) -> Estimate:
    """
    Ordinary line integral of a 1-form along the path

    Standard forms use exact per-segment increments; F(z) dz/z is integrated
    segmentwise by tanh-sinh.

    Raises:
        DivergentIntegral: non-integrable singular endpoint
    """
    cfg = cfg or DEFAULT_QUADRATURE
    if path.is_empty:
        return Estimate(0j, 0.0)
    if form.is_standard:
        return Estimate(_fsum_complex(path.increments(form)), 0.0)

    values = []
    error = 0.0
    for segment in path.segments:
        def integrand(t, segment=segment):
            z = segment.point(t)
            return form.density(z) * segment.derivative(t)

        piece = quad_finite(integrand, 0.0, 1.0, cfg)
        values.append(complex(piece))
        error += piece.error
    return Estimate(_fsum_complex(values), error)


def cumulative_form_integral(
    path: Path, form: FormSpec, cfg: Optional[QuadratureConfig] = None
) -> Callable[[float], complex]:
    """
    B(t) = integral of the form from the start of the path to path(t), with
    the branch of log carried by accumulation across segments
    """
    cfg = cfg or DEFAULT_QUADRATURE
    if path.is_empty:
        return lambda t: 0j
    m = len(path.segments)

    if form.is_standard:
        incs = path.increments(form)
        prefix = [_fsum_complex(incs[:j]) for j in range(m)]

        def cumulative(t: float) -> complex:
            if t <= 0:
                return 0j
            j, local = path._locate(t)
            return prefix[j] + complex(np.asarray(path.segments[j].partial(form, 0.0, local)))

        return cumulative

    totals = [complex(integrate_form(Path((seg,)), form, cfg)) for seg in path.segments]

    def cumulative_weighted(t: float) -> complex:
        if t <= 0:
            return 0j
        j, local = path._locate(t)
        segment = path.segments[j]

        def integrand(u):
            return form.density(segment.point(u)) * segment.derivative(u)

        return _fsum_complex(totals[:j]) + complex(quad_finite(integrand, 0.0, local, cfg))

    return cumulative_weighted
