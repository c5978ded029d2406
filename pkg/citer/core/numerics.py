"""
Numerics core - complex Gamma, principal powers, binomials, tanh-sinh
quadrature and Cauchy-circle Laurent coefficients
"""

import cmath
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Tuple, Union

import numpy as np

from ..utils.config import QuadratureConfig
from .errors import NoConvergence, PoleError, RadiusError, TailTooFat, ZeroBaseError

logger = logging.getLogger(__name__)

DEFAULT_QUADRATURE = QuadratureConfig()

ComplexLike = Union[complex, float, int]

# Lanczos approximation, g = 7, nine terms
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)

# tanh-sinh: t-range and the first level at which convergence is judged
_T_MAX = 6.0
_MIN_LEVEL = 3
_NEGLIGIBLE_WEIGHT = 1e-200


class Estimate(complex):
    """A complex value carrying an absolute error estimate"""

    def __new__(cls, value: ComplexLike, error: float = 0.0) -> "Estimate":
        obj = super().__new__(cls, complex(value))
        obj.error = float(error)
        return obj

    def __repr__(self) -> str:
        return f"Estimate({complex(self)!r}, error={self.error:.3g})"

    def __reduce__(self):
        return (Estimate, (complex(self), self.error))


def _is_pole(s: complex) -> bool:
    return s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real)


def log_gamma(s: ComplexLike) -> complex:
    """
    A logarithm of Gamma(s); exp(log_gamma(s)) == gamma(s).
    The imaginary part is not normalised to the principal branch.
    """
    s = complex(s)
    if _is_pole(s):
        raise PoleError(f"Gamma has a pole at s={s.real:g}")
    if s.real < 0.5:
        return cmath.log(math.pi) - cmath.log(cmath.sin(math.pi * s)) - log_gamma(1 - s)
    z = s - 1
    x = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        x += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def gamma(s: ComplexLike) -> complex:
    """
    Gamma(s) for complex s, Lanczos approximation with reflection for Re(s) < 1/2

    Raises:
        PoleError: at s = 0, -1, -2, ...
    """
    s = complex(s)
    if _is_pole(s):
        raise PoleError(f"Gamma has a pole at s={s.real:g}")
    if s.real < 0.5:
        return math.pi / (cmath.sin(math.pi * s) * gamma(1 - s))
    return cmath.exp(log_gamma(s))


def rgamma(s: ComplexLike) -> complex:
    """1/Gamma(s), zero at the poles of Gamma"""
    s = complex(s)
    if _is_pole(s):
        return 0j
    return 1.0 / gamma(s)


def principal_log(z: ComplexLike, branch_offset: int = 0) -> complex:
    """log|z| + i(arg z + 2 pi b) with arg in (-pi, pi]"""
    z = complex(z)
    if z == 0:
        raise ZeroBaseError("logarithm of zero")
    arg = cmath.phase(z)
    if arg == -math.pi:
        arg = math.pi
    return complex(math.log(abs(z)), arg + 2.0 * math.pi * branch_offset)


def principal_power(z, s, branch_offset: int = 0):
    """
    exp(s (log|z| + i arg z + 2 pi i b)) with arg in (-pi, pi].

    Vectorised over z (and s). A zero base gives 0 when Re(s) > 0.

    Raises:
        ZeroBaseError: zero base with Re(s) <= 0
    """
    scalar = np.ndim(z) == 0 and np.ndim(s) == 0
    z_arr = np.asarray(z, dtype=complex)
    s_arr = np.asarray(s, dtype=complex)
    zero = z_arr == 0
    if np.any(zero & (s_arr.real <= 0)):
        raise ZeroBaseError("zero base raised to an exponent with Re(s) <= 0")
    safe = np.where(zero, 1.0 + 0j, z_arr)
    arg = np.angle(safe)
    # -0.0 imaginary parts land on -pi; the cut belongs to the upper side
    arg = np.where(arg == -np.pi, np.pi, arg)
    log_z = np.log(np.abs(safe)) + 1j * (arg + 2.0 * np.pi * branch_offset)
    out = np.where(zero, 0j, np.exp(s_arr * log_z))
    if scalar:
        return complex(out)
    return out


def generalized_binomial(s: ComplexLike, n: int) -> complex:
    """binom(s, n) = s(s-1)...(s-n+1)/n!, exact at non-negative integer s"""
    if n < 0:
        raise ValueError("n must be non-negative")
    s = complex(s)
    result = 1.0 + 0j
    for j in range(n):
        result *= (s - j) / (j + 1)
    return result


# ---------------------------------------------------------------------------
# tanh-sinh quadrature
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def _tanh_sinh_nodes(level: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Unit-interval nodes as (offset from a, offset from b, weight)"""
    h = 2.0 ** -level
    count = int(math.ceil(_T_MAX / h))
    t = h * np.arange(-count, count + 1)
    v = 0.5 * np.pi * np.sinh(t)
    left = 1.0 / (1.0 + np.exp(-2.0 * v))
    right = 1.0 / (1.0 + np.exp(2.0 * v))
    weight = h * 0.25 * np.pi * np.cosh(t) / np.cosh(v) ** 2
    for arr in (left, right, weight):
        arr.setflags(write=False)
    return left, right, weight


def quad_finite_rows(
    integrand: Callable[..., np.ndarray],
    a: float,
    b: float,
    cfg: Optional[QuadratureConfig] = None,
    *,
    with_offsets: bool = False,
    abs_tol: float = 0.0,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Tanh-sinh quadrature of a vectorised integrand on [a, b].

    The integrand receives the node array x (and, with ``with_offsets``, the
    exact distances x - a and b - x) and may return an array whose last axis
    runs over the nodes; every leading row is integrated separately.

    Returns:
        (values, errors) with the node axis summed out
    """
    cfg = cfg or DEFAULT_QUADRATURE
    a = float(a)
    b = float(b)
    if b < a:
        values, errors = quad_finite_rows(
            integrand, b, a, cfg, with_offsets=with_offsets, abs_tol=abs_tol
        )
        return -values, errors
    length = b - a
    if length == 0:
        sample = np.array([a])
        shape = np.shape(integrand(sample, sample * 0, sample * 0) if with_offsets else integrand(sample))
        return np.zeros(shape[:-1], dtype=complex), np.zeros(shape[:-1])

    previous = None
    for level in range(1, cfg.max_level + 1):
        left, right, unit_weight = _tanh_sinh_nodes(level)
        from_a = length * left
        from_b = length * right
        x = np.where(left <= 0.5, a + from_a, b - from_b)
        w = length * unit_weight
        if with_offsets:
            values = np.asarray(integrand(x, from_a, from_b), dtype=complex)
        else:
            values = np.asarray(integrand(x), dtype=complex)
        finite = np.isfinite(values)
        if not finite.all():
            significant = np.broadcast_to(w >= _NEGLIGIBLE_WEIGHT * length, values.shape)
            bad = ~finite & significant
            if bad.any():
                where = np.broadcast_to(x, values.shape)[bad][0]
                raise NoConvergence(f"integrand is not finite at x={where:.6g} on [{a:g}, {b:g}]")
            values = np.where(finite, values, 0j)
        total = np.sum(values * w, axis=-1)
        scale = np.sum(np.abs(values) * w, axis=-1)
        if previous is not None and level >= _MIN_LEVEL:
            error = np.abs(total - previous)
            if np.all(error <= np.maximum(cfg.rel_tol * scale, abs_tol)):
                logger.debug("tanh-sinh on [%g, %g] converged at level %d", a, b, level)
                return total, error
        previous = total

    raise NoConvergence(
        f"tanh-sinh on [{a:g}, {b:g}] did not reach rel_tol={cfg.rel_tol:g} "
        f"by level {cfg.max_level}"
    )


def quad_finite(
    integrand: Callable[..., np.ndarray],
    a: float,
    b: float,
    cfg: Optional[QuadratureConfig] = None,
    *,
    with_offsets: bool = False,
    abs_tol: float = 0.0,
) -> Estimate:
    """
    Integrate a scalar-valued vectorised integrand over [a, b]

    Args:
        integrand: callable on node arrays
        a, b: finite limits; algebraic-logarithmic endpoint singularities allowed
        cfg: quadrature configuration
        with_offsets: pass (x, x - a, b - x) to the integrand

    Raises:
        NoConvergence: refinement stalls before max_level
    """
    value, error = quad_finite_rows(
        integrand, a, b, cfg, with_offsets=with_offsets, abs_tol=abs_tol
    )
    if np.ndim(value) != 0:
        raise ValueError("quad_finite expects a scalar-valued integrand; use quad_finite_rows")
    return Estimate(complex(value), float(error))


def quad_halfline_rows(
    integrand: Callable[[np.ndarray], np.ndarray],
    cfg: Optional[QuadratureConfig] = None,
    *,
    lower: float = 0.0,
    upper: Optional[float] = None,
    abs_tol: float = 0.0,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Integral over [lower, oo) of an exponentially decaying integrand, split at
    x = 1 and truncated at ``upper`` (default cfg.tail_cutoff).

    Raises:
        TailTooFat: the integrand has not decayed below rel_tol at the cutoff
    """
    cfg = cfg or DEFAULT_QUADRATURE
    upper = cfg.tail_cutoff if upper is None else float(upper)
    if lower >= upper:
        raise ValueError(f"lower limit {lower:g} must lie below the cutoff {upper:g}")

    split = 1.0 if lower < 1.0 < upper else None
    if split is None:
        values, errors = quad_finite_rows(integrand, lower, upper, cfg, abs_tol=abs_tol)
    else:
        head, head_err = quad_finite_rows(integrand, lower, split, cfg, abs_tol=abs_tol)
        tail, tail_err = quad_finite_rows(integrand, split, upper, cfg, abs_tol=abs_tol)
        values, errors = head + tail, head_err + tail_err

    edge = np.abs(np.asarray(integrand(np.array([upper])), dtype=complex))[..., 0]
    limit = np.maximum(cfg.rel_tol * np.abs(values), abs_tol)
    if np.any(edge > np.maximum(limit, 1e-300)):
        raise TailTooFat(
            f"integrand is still {float(np.max(edge)):.3g} at the cutoff x={upper:g}"
        )
    return values, errors + edge


def quad_halfline(
    integrand: Callable[[np.ndarray], np.ndarray],
    cfg: Optional[QuadratureConfig] = None,
    *,
    lower: float = 0.0,
    upper: Optional[float] = None,
    abs_tol: float = 0.0,
) -> Estimate:
    """Scalar version of :func:`quad_halfline_rows`"""
    value, error = quad_halfline_rows(integrand, cfg, lower=lower, upper=upper, abs_tol=abs_tol)
    if np.ndim(value) != 0:
        raise ValueError("quad_halfline expects a scalar-valued integrand; use quad_halfline_rows")
    return Estimate(complex(value), float(error))


# ---------------------------------------------------------------------------
# Cauchy-circle Laurent coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaurentCoefficients:
    """Laurent coefficients c_k, k = min_order..max_order, about ``center``"""

    center: complex
    min_order: int
    coefficients: Tuple[complex, ...]
    errors: Tuple[float, ...]
    radius_used: float

    @property
    def max_order(self) -> int:
        return self.min_order + len(self.coefficients) - 1

    def __getitem__(self, order: int) -> complex:
        if not self.min_order <= order <= self.max_order:
            raise KeyError(f"order {order} outside [{self.min_order}, {self.max_order}]")
        return self.coefficients[order - self.min_order]

    def error(self, order: int) -> float:
        if not self.min_order <= order <= self.max_order:
            raise KeyError(f"order {order} outside [{self.min_order}, {self.max_order}]")
        return self.errors[order - self.min_order]


def circle_coefficients(
    g: Callable[[np.ndarray], np.ndarray],
    min_order: int,
    max_order: int,
    radius: Optional[float] = None,
    cfg: Optional[QuadratureConfig] = None,
    center: complex = 0j,
) -> LaurentCoefficients:
    """
    Laurent coefficients of g about ``center`` from equally spaced samples on
    a circle. The error of each coefficient is its change when every other
    sample is dropped, plus a rounding floor.

    Raises:
        RadiusError: g is not finite somewhere on the circle
    """
    cfg = cfg or DEFAULT_QUADRATURE
    radius = cfg.circle_radius if radius is None else float(radius)
    if radius <= 0:
        raise ValueError("radius must be positive")
    if max_order < min_order:
        raise ValueError("max_order must not be below min_order")
    m = cfg.circle_points
    if max_order - min_order + 1 > m // 2:
        raise ValueError("requested order range exceeds half the circle sample count")

    ring = np.exp(2j * np.pi * np.arange(m) / m)
    values = np.asarray(g(center + radius * ring), dtype=complex)
    if not np.all(np.isfinite(values)):
        raise RadiusError(f"function is not finite on the circle |x - {center}| = {radius:g}")

    full = np.fft.fft(values) / m
    half = np.fft.fft(values[::2]) / (m // 2)
    floor = 16.0 * np.finfo(float).eps * float(np.max(np.abs(values)))

    coefficients = []
    errors = []
    for order in range(min_order, max_order + 1):
        scale = radius ** (-order)
        c_full = complex(full[order % m]) * scale
        c_half = complex(half[order % (m // 2)]) * scale
        coefficients.append(c_full)
        errors.append(abs(c_full - c_half) + floor * scale)

    return LaurentCoefficients(
        center=complex(center),
        min_order=min_order,
        coefficients=tuple(coefficients),
        errors=tuple(errors),
        radius_used=radius,
    )
