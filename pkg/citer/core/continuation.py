"""
Analytic continuation - the Riemann contour for L(F)(s), values at
negative integers from Laurent coefficients, the residue at s = 1,
w-truncated continuation and generalized Bernoulli numbers
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
import sympy

from ..models.results import CheckResult, ContinuationResult, ContinuationRoute, to_pair
from ..utils.config import Config, QuadratureConfig
from .errors import (
    NoClosedForm,
    NoLaurentData,
    PositiveIntegerPole,
    RadiusError,
    SpecError,
)
from .iterated import branch_power, power_iterated_integral
from .numerics import (
    DEFAULT_QUADRATURE,
    Estimate,
    circle_coefficients,
    gamma,
    principal_log,
    quad_finite,
    quad_halfline,
    rgamma,
)
from .series import CharacterTable, SeriesModel, iterated_derivative_at_1

logger = logging.getLogger(__name__)

# circle used to take the limit at a positive integer
_INTEGER_CIRCLE_RADIUS = 0.25
_INTEGER_CIRCLE_POINTS = 16
_POLE_THRESHOLD = 1e-6


@dataclass(frozen=True)
class ContourSpec:
    """
    Geometry of the Riemann contour: rays along [delta, x_max] above and
    below the positive axis joined by a circle of radius delta about 0
    """

    delta: float = 0.5
    x_max: float = 50.0
    samples_per_unit: int = 64

    def __post_init__(self):
        if self.delta <= 0:
            raise SpecError(f"contour radius must be positive, got {self.delta!r}")
        if self.x_max <= self.delta:
            raise SpecError(f"ray truncation {self.x_max!r} must exceed the radius {self.delta!r}")
        if self.samples_per_unit < 1:
            raise SpecError("samples_per_unit must be positive")

    @classmethod
    def from_config(cls, config: Config) -> "ContourSpec":
        return cls(delta=config.contour_delta, x_max=config.contour_x_max)

    @property
    def circle_points(self) -> int:
        """Trapezoid points on the circle: a power of two, at least 16"""
        wanted = max(16, int(math.ceil(self.samples_per_unit * 2 * math.pi * self.delta)))
        return 1 << (wanted - 1).bit_length()

    def with_delta(self, delta: float) -> "ContourSpec":
        return ContourSpec(delta=delta, x_max=self.x_max, samples_per_unit=self.samples_per_unit)


def _fmt(value: complex) -> str:
    value = complex(value)
    return f"{value.real:g}" if value.imag == 0 else f"{value.real:g}{value.imag:+g}i"


def _is_integer(s: complex) -> bool:
    return s.imag == 0 and s.real == round(s.real)


def sin_pi(s: complex) -> complex:
    """sin(pi s), exactly zero at the integers"""
    s = complex(s)
    if _is_integer(s):
        return 0j
    n = round(s.real)
    return (-1) ** n * cmath.sin(math.pi * (s - n))


def _require_closed_form(model: SeriesModel) -> None:
    if model.closed_form is None:
        raise NoClosedForm(f"{model.label}: continuation needs a rational closed form near z = 1")


def singularity_distance(model: SeriesModel) -> float:
    """Distance from 0 to the nearest singularity of F(exp(-x)) other than 0"""
    _require_closed_form(model)
    nearest = math.inf
    for root in model.closed_form.denominator_roots():
        base = -principal_log(root)
        for m in (-1, 0, 1):
            x = base + 2j * math.pi * m
            if abs(x) > 1e-9:
                nearest = min(nearest, abs(x))
    return nearest


def check_radius(model: SeriesModel, delta: float) -> None:
    """
    Raises:
        RadiusError: the contour circle reaches another singularity
    """
    nearest = singularity_distance(model)
    if delta >= nearest:
        raise RadiusError(
            f"{model.label}: contour radius {delta:g} reaches a singularity at distance {nearest:.6g}"
        )


# ---------------------------------------------------------------------------
# Contour pieces
# ---------------------------------------------------------------------------

def _ray_integral(
    g: Callable, s: complex, delta: float, upper: float, cfg: QuadratureConfig, *, truncated: bool
) -> Estimate:
    """int_delta^upper x^{s-1} G(x) dx"""

    def integrand(x):
        return branch_power(x, s - 1.0) * g(x)

    if truncated:
        return quad_finite(integrand, delta, upper, cfg)
    return quad_halfline(integrand, cfg, lower=delta, upper=upper)


def _circle_integral(
    g: Callable, s: complex, delta: float, points: int, cfg: QuadratureConfig
) -> Estimate:
    """
    int (-x)^s G(x) dx/x once around |x| = delta, starting just above the
    positive axis, with -x = delta exp(i(theta - pi))
    """
    if _is_integer(s):
        n = int(round(s.real))
        estimates = []
        for m in (points // 2, points):
            theta = 2 * np.pi * np.arange(m) / m
            x = delta * np.exp(1j * theta)
            values = (-x) ** n * np.asarray(g(x), dtype=complex) * 1j
            estimates.append(2 * np.pi * complex(np.mean(values)))
        return Estimate(estimates[1], abs(estimates[1] - estimates[0]))

    log_delta = math.log(delta)

    def integrand(theta):
        x = delta * np.exp(1j * theta)
        return np.exp(s * (log_delta + 1j * (theta - np.pi))) * np.asarray(g(x), dtype=complex) * 1j

    return quad_finite(integrand, 0.0, 2 * math.pi, cfg)


def _continued(
    g: Callable,
    s: complex,
    delta: float,
    upper: float,
    points: int,
    cfg: QuadratureConfig,
    *,
    truncated: bool = False,
) -> Estimate:
    """
    Gamma(1-s)/(2 pi i) times the contour integral, written as

        (1/Gamma(s)) int_delta^upper x^{s-1} G dx + Gamma(1-s)/(2 pi i) * circle

    which avoids the product sin(pi s) Gamma(1-s) near the integers
    """
    circle = _circle_integral(g, s, delta, points, cfg)
    weight = gamma(1.0 - s) / (2j * math.pi)
    value = weight * complex(circle)
    error = abs(weight) * circle.error
    norm = rgamma(s)
    if norm != 0:
        ray = _ray_integral(g, s, delta, upper, cfg, truncated=truncated)
        value += norm * complex(ray)
        error += abs(norm) * ray.error
    return Estimate(value, error)


def contour_H(
    model: SeriesModel,
    s: complex,
    spec: Optional[ContourSpec] = None,
    cfg: Optional[QuadratureConfig] = None,
) -> Estimate:
    """
    H(s) = int_C (-x)^s G(x) dx/x, C from +oo above the axis, once about 0
    and back below; the rays give 2i sin(pi s) int_delta^x_max x^{s-1} G dx.

    Raises:
        NoClosedForm: the model cannot be evaluated near x = 0
        RadiusError: delta reaches another singularity of G
        TailTooFat: G has not decayed by x_max
    """
    spec = spec or ContourSpec()
    cfg = cfg or DEFAULT_QUADRATURE
    s = complex(s)
    _require_closed_form(model)
    check_radius(model, spec.delta)
    g = model.closed_form.exponential
    circle = _circle_integral(g, s, spec.delta, spec.circle_points, cfg)
    factor = 2j * sin_pi(s)
    if factor == 0:
        return circle
    ray = _ray_integral(g, s, spec.delta, spec.x_max, cfg, truncated=False)
    return Estimate(factor * complex(ray) + complex(circle), abs(factor) * ray.error + circle.error)


def _result(value: Estimate, route: ContinuationRoute, s: complex, model: SeriesModel) -> ContinuationResult:
    return ContinuationResult(
        value=to_pair(value),
        route=route,
        error_estimate=float(value.error),
        s=to_pair(s),
        label=model.label,
    )


def _product(
    model: SeriesModel, s: complex, evaluate: Callable[[SeriesModel], ContinuationResult], route: ContinuationRoute
) -> ContinuationResult:
    """Continue a product of L-transforms factor by factor"""
    value = 1.0 + 0j
    error = 0.0
    for factor in model.factors:
        part = evaluate(factor)
        v = part.complex_value
        error = abs(v) * error + abs(value) * part.error_estimate
        value *= v
    logger.debug("%s continued at %s as a product of %d factors", model.label, _fmt(s), len(model.factors))
    return _result(Estimate(value, error), route, s, model)


def _at_positive_integer(
    model: SeriesModel, n: int, spec: ContourSpec, cfg: QuadratureConfig
) -> Estimate:
    """
    Mean of L over a small circle about s = n; the mean of L(s)(s - n)
    is the residue there

    Raises:
        PositiveIntegerPole: the residue is not negligible
    """
    g = model.closed_form.exponential
    m = _INTEGER_CIRCLE_POINTS
    phases = np.exp(2j * np.pi * np.arange(m) / m)
    values = []
    error = 0.0
    for phase in phases:
        sj = n + _INTEGER_CIRCLE_RADIUS * phase
        est = _continued(g, complex(sj), spec.delta, spec.x_max, spec.circle_points, cfg)
        values.append(complex(est))
        error += est.error / m
    values = np.array(values)
    c0 = complex(np.mean(values))
    residue = complex(np.mean(values * _INTEGER_CIRCLE_RADIUS * phases))
    if abs(residue) > _POLE_THRESHOLD * max(1.0, abs(c0)):
        raise PositiveIntegerPole(
            f"{model.label}: L has a pole at s={n} (residue ~ {_fmt(residue)})"
        )
    aliasing = abs(c0 - complex(np.mean(values[::2])))
    return Estimate(c0, error + aliasing)


def continue_L(
    model: SeriesModel,
    s: complex,
    spec: Optional[ContourSpec] = None,
    cfg: Optional[QuadratureConfig] = None,
) -> ContinuationResult:
    """
    L(F)(s) = Gamma(1-s)/(2 pi i) H(s) for any s; at positive integers the
    value is the mean over a small circle about s.

    Raises:
        NoClosedForm: no closed form and no factorisation
        PositiveIntegerPole: s is a pole of the continuation
    """
    spec = spec or ContourSpec()
    cfg = cfg or DEFAULT_QUADRATURE
    s = complex(s)
    if model.closed_form is None:
        if model.factors:
            return _product(
                model, s, lambda factor: continue_L(factor, s, spec, cfg), ContinuationRoute.CONTOUR
            )
        _require_closed_form(model)
    check_radius(model, spec.delta)

    if _is_integer(s) and s.real >= 1:
        value = _at_positive_integer(model, int(s.real), spec, cfg)
    else:
        value = _continued(
            model.closed_form.exponential, s, spec.delta, spec.x_max, spec.circle_points, cfg
        )
    logger.debug("continued %s to s=%s: %r", model.label, _fmt(s), value)
    return _result(value, ContinuationRoute.CONTOUR, s, model)


# ---------------------------------------------------------------------------
# Negative integers
# ---------------------------------------------------------------------------

def value_at_negative_integer(
    model: SeriesModel,
    k: int,
    spec: Optional[ContourSpec] = None,
    cfg: Optional[QuadratureConfig] = None,
) -> ContinuationResult:
    """
    L(F)(-k) = (-1)^k k! c_k with c_k the order-k Laurent coefficient of
    F(exp(-x)) at x = 0, read off a circle of radius delta

    Raises:
        NoClosedForm, RadiusError
    """
    spec = spec or ContourSpec()
    cfg = cfg or DEFAULT_QUADRATURE
    if k < 0:
        raise SpecError(f"k must be a non-negative integer, got {k!r}")
    if model.closed_form is None:
        if model.factors:
            return _product(
                model, complex(-k),
                lambda factor: value_at_negative_integer(factor, k, spec, cfg),
                ContinuationRoute.LAURENT,
            )
        _require_closed_form(model)
    check_radius(model, spec.delta)

    poles = model.closed_form.pole_order_at_1
    coefficients = circle_coefficients(
        model.closed_form.exponential, min(-poles, 0), k, radius=spec.delta, cfg=cfg
    )
    scale = (-1) ** k * math.factorial(k)
    value = Estimate(scale * coefficients[k], math.factorial(k) * coefficients.error(k))
    return _result(value, ContinuationRoute.LAURENT, complex(-k), model)


def value_by_derivative(model: SeriesModel, m: int) -> ContinuationResult:
    """L(F)(-m) as (t d/dt)^m F at t = 1, for F regular at 1"""
    value = iterated_derivative_at_1(model, m)
    return _result(Estimate(value, 0.0), ContinuationRoute.DERIVATIVE, complex(-m), model)


def w_truncated_continuation(
    model: SeriesModel,
    w: float,
    k: int,
    spec: Optional[ContourSpec] = None,
    cfg: Optional[QuadratureConfig] = None,
) -> ContinuationResult:
    """
    The transform over [w, 1] continued to s = -k through the contour whose
    rays stop at X = -log w; the circle radius is at most X/2
    """
    spec = spec or ContourSpec()
    cfg = cfg or DEFAULT_QUADRATURE
    if not 0.0 < w < 1.0:
        raise SpecError(f"w must lie in (0, 1), got {w!r}")
    if k < 0:
        raise SpecError(f"k must be a non-negative integer, got {k!r}")
    _require_closed_form(model)
    upper = -math.log(w)
    delta = min(spec.delta, 0.5 * upper)
    check_radius(model, delta)
    value = _continued(
        model.closed_form.exponential,
        complex(-k),
        delta,
        upper,
        spec.with_delta(delta).circle_points,
        cfg,
        truncated=True,
    )
    return _result(value, ContinuationRoute.CONTOUR, complex(-k), model)


def truncated_transform(
    model: SeriesModel, w: float, s: complex, cfg: Optional[QuadratureConfig] = None
) -> Estimate:
    """The transform over [w, 1] at a point of convergence"""
    return power_iterated_integral(model, s, lower=w, cfg=cfg)


# ---------------------------------------------------------------------------
# Residue at s = 1
# ---------------------------------------------------------------------------

def residue_at_1(
    model: SeriesModel,
    spec: Optional[ContourSpec] = None,
    cfg: Optional[QuadratureConfig] = None,
) -> Estimate:
    """
    Residue of L(F)(s) at s = 1, the order -1 coefficient of F(exp(-x)) at
    x = 0. A factorised model multiplies the residue of its first factor by
    the value of the rest at s = 1.
    """
    spec = spec or ContourSpec()
    cfg = cfg or DEFAULT_QUADRATURE
    if model.closed_form is None and model.factors:
        first, *rest = model.factors
        value = residue_at_1(first, spec, cfg)
        error = value.error
        total = complex(value)
        for factor in rest:
            part = continue_L(factor, 1.0, spec, cfg)
            v = part.complex_value
            error = abs(v) * error + abs(total) * part.error_estimate
            total *= v
        return Estimate(total, error)
    _require_closed_form(model)
    check_radius(model, spec.delta)
    coefficients = circle_coefficients(model.closed_form.exponential, -1, -1, radius=spec.delta, cfg=cfg)
    return Estimate(coefficients[-1], coefficients.error(-1))


def _laurent_exact(model: SeriesModel) -> Tuple[int, List[sympy.Expr]]:
    if model.closed_form is None:
        raise NoLaurentData(f"{model.label} has no Laurent data at z = 1")
    closed = model.closed_form
    return closed.valuation, closed.laurent_exact()


def laurent_residue_sum(model: SeriesModel) -> complex:
    """sum_{n=-m}^{-1} (-1)^{1-n} a_n over the Laurent coefficients of F at z = 1"""
    valuation, coeffs = _laurent_exact(model)
    total = sympy.Integer(0)
    for offset, a in enumerate(coeffs):
        n = valuation + offset
        if n >= 0:
            break
        total += (-1) ** (1 - n) * a
    return complex(sympy.N(total, 20))


def residue_from_laurent(model: SeriesModel) -> complex:
    """
    The residue at s = 1 from the Laurent coefficients of F at z = 1,
    sum_n a_n Res_{x=0} (exp(-x) - 1)^n
    """
    valuation, coeffs = _laurent_exact(model)
    x = sympy.Symbol("x")
    total = sympy.Integer(0)
    for offset, a in enumerate(coeffs):
        n = valuation + offset
        if n >= 0:
            break
        total += a * sympy.residue((sympy.exp(-x) - 1) ** n, x, 0)
    return complex(sympy.N(total, 20))


@dataclass(frozen=True)
class PoleBound:
    """max |L| on two small circles about s = 1"""

    inner: float
    outer: float

    @property
    def bounded(self) -> bool:
        # a simple pole doubles the maximum when the radius halves
        return self.inner < 1.5 * self.outer


def bound_near_pole(
    model: SeriesModel,
    spec: Optional[ContourSpec] = None,
    cfg: Optional[QuadratureConfig] = None,
    radius: float = 0.1,
    samples: int = 8,
) -> PoleBound:
    spec = spec or ContourSpec()
    cfg = cfg or DEFAULT_QUADRATURE
    phases = np.exp(2j * np.pi * (np.arange(samples) + 0.5) / samples)

    def largest(r: float) -> float:
        return max(abs(continue_L(model, complex(1.0 + r * p), spec, cfg).complex_value) for p in phases)

    return PoleBound(inner=largest(0.5 * radius), outer=largest(radius))


# ---------------------------------------------------------------------------
# Bernoulli numbers and overlap with the convergent strip
# ---------------------------------------------------------------------------

def generalized_bernoulli(n: int, table: CharacterTable) -> complex:
    """B_{n,chi} = f^{n-1} sum_{a=1}^{f} chi(a) B_n(a/f)"""
    if n < 0:
        raise SpecError("Bernoulli index must be non-negative")
    f = table.modulus
    total = 0j
    for a in range(1, f + 1):
        chi = table(a)
        if chi != 0:
            total += chi * complex(sympy.bernoulli(n, sympy.Rational(a, f)))
    return f ** (n - 1) * total


def overlap_points(model: SeriesModel) -> Tuple[complex, ...]:
    """Sample points of the convergent strip just past the abscissa"""
    k = model.bieberbach_order
    return (complex(k + 1.5), complex(k + 2.0), complex(k + 2.5, 1.0))


def overlap_check(
    model: SeriesModel,
    s: complex,
    spec: Optional[ContourSpec] = None,
    cfg: Optional[QuadratureConfig] = None,
    tolerance: float = 1e-7,
) -> CheckResult:
    """Continued value against the direct transform where both exist"""
    continued = continue_L(model, s, spec, cfg)
    direct = power_iterated_integral(model, s, cfg=cfg)
    return CheckResult.from_values(
        name=f"overlap {model.label} s={_fmt(s)}",
        computed=continued.complex_value,
        expected=complex(direct),
        tolerance=tolerance,
        error_estimate=continued.error_estimate + direct.error,
        provenance="contour continuation agrees with the convergent integral",
    )
