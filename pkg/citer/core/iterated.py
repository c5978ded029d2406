"""
Iterated-integral engine - complex-exponent iterated integrals along paths
and on the unit interval

Covers the words alpha beta^{s-1} and beta^{s-1} alpha along piecewise paths,
the L-transform of a series model, the iterative property, the
comultiplication formula for composed paths, the Haar and multiplicative
iterative properties and depth-two multiple iterated integrals.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..models.results import CheckResult
from ..utils.config import QuadratureConfig
from .errors import (
    ConvergenceConstraint,
    DepthUnsupported,
    DivergentIntegral,
    DominationViolated,
    SlowConvergence,
    SpecError,
    TailNotSmall,
)
from .numerics import (
    DEFAULT_QUADRATURE,
    Estimate,
    generalized_binomial,
    principal_power,
    quad_finite,
    quad_finite_rows,
    quad_halfline,
    rgamma,
)
from .paths import (
    DZ_OVER_ONE_MINUS_Z,
    DZ_OVER_Z,
    FormKind,
    FormSpec,
    Line,
    Path,
    PathSegment,
    _fsum_complex,
    concat,
    integrate_form,
)
from .series import SeriesModel

logger = logging.getLogger(__name__)

DOMINATION_SAMPLES = 64
DOMINATION_MARGIN = 1.1
DEFAULT_TERMS = 40

# gap series terms are dropped once n^k x exceeds this
_GAP_EXPONENT_CUTOFF = 40.0
_GAP_CHUNK = 64
_GAP_MAX_TERMS = 2 * 10**6
_OUTER_FLOOR = 1e-100


def branch_power(base, exponent: complex) -> np.ndarray:
    """
    Elementwise principal power, arg in (-pi, pi]. Zero bases give 0 or inf;
    non-finite values are screened by the quadrature.
    """
    base = np.asarray(base, dtype=complex)
    exponent = complex(exponent)
    if exponent == 0:
        return np.ones(base.shape, dtype=complex)
    zero = base == 0
    safe = np.where(zero, 1.0 + 0j, base)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
        log_base = np.log(safe)
        log_base = np.where(log_base.imag == -np.pi, log_base + 2j * np.pi, log_base)
        out = np.exp(exponent * log_base)
    if zero.any():
        out = np.where(zero, 0j if exponent.real > 0 else complex(np.inf), out)
    return out


def _fmt(value: complex) -> str:
    value = complex(value)
    if value.imag == 0:
        return f"{value.real:g}"
    return f"{value.real:g}{value.imag:+g}i"


def _segment_point(segment: PathSegment, t, from_a, from_b) -> np.ndarray:
    """Point at local parameter t, measured from the nearer end of a line"""
    if isinstance(segment, Line):
        return np.where(
            t <= 0.5,
            segment.start + from_a * segment.delta,
            segment.end - from_b * segment.delta,
        )
    return segment.point(t)


def _segment_increment(
    segment: PathSegment, form: FormSpec, cfg: QuadratureConfig
) -> complex:
    if form.is_standard:
        return segment.increment(form)
    return complex(integrate_form(Path((segment,)), form, cfg))


def _weighted_tail(segment: PathSegment, form: FormSpec, t, rest, cfg: QuadratureConfig) -> np.ndarray:
    """Integral of a weighted form from local parameter t to the end of the segment, per t"""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    rest = np.atleast_1d(np.asarray(rest, dtype=float))

    def rows(u):
        tau = t[:, None] + rest[:, None] * u[None, :]
        return form.density(segment.point(tau)) * segment.derivative(tau)

    values, _ = quad_finite_rows(rows, 0.0, 1.0, cfg)
    return values * rest


def _weighted_head(segment: PathSegment, form: FormSpec, t, cfg: QuadratureConfig) -> np.ndarray:
    """Integral of a weighted form from the start of the segment to local parameter t, per t"""
    t = np.atleast_1d(np.asarray(t, dtype=float))

    def rows(u):
        tau = t[:, None] * u[None, :]
        return form.density(segment.point(tau)) * segment.derivative(tau)

    values, _ = quad_finite_rows(rows, 0.0, 1.0, cfg)
    return values * t


def _density_times_z(form: FormSpec, x: np.ndarray, end: complex) -> np.ndarray:
    """omega/dz times z at z = end exp(-x)"""
    z = end * np.exp(-x)
    if form.kind == FormKind.DZ_OVER_Z:
        raise DivergentIntegral("dz/z is not integrable at the endpoint 0")
    if form.kind == FormKind.DZ_OVER_ONE_MINUS_Z:
        one_minus_z = (1.0 - end) - end * np.expm1(-x)
        with np.errstate(divide="ignore", invalid="ignore"):
            return z / one_minus_z
    if form.kind == FormKind.DZ:
        return z
    if end == 1:
        return np.asarray(form.model.exponential(x), dtype=complex)
    return np.asarray(form.model.eval(z), dtype=complex)


# ---------------------------------------------------------------------------
# L-transform on the unit interval
# ---------------------------------------------------------------------------

def power_iterated_integral(
    model: SeriesModel,
    s: complex,
    lower: float = 0.0,
    cfg: Optional[QuadratureConfig] = None,
) -> Estimate:
    """
    The integral of F(z)(dz/z)^s over [lower, 1]:

        (1/Gamma(s)) int_0^X x^{s-1} F(exp(-x)) dx,   X = -log(lower)

    Raises:
        ConvergenceConstraint: Re(s) at or below the model's abscissa with
            lower = 0, or Re(s) <= 0
    """
    cfg = cfg or DEFAULT_QUADRATURE
    s = complex(s)
    if not 0.0 <= lower < 1.0:
        raise SpecError(f"lower limit must lie in [0, 1), got {lower!r}")
    if lower == 0.0 and s.real <= model.convergence_abscissa:
        raise ConvergenceConstraint(
            f"{model.label}: the transform over [0, 1] needs Re(s) > "
            f"{model.convergence_abscissa:g}, got s={_fmt(s)}"
        )
    if s.real <= 0:
        raise ConvergenceConstraint(f"iterated integral needs Re(s) > 0, got s={_fmt(s)}")

    exponent = s - 1.0

    def integrand(x):
        return branch_power(x, exponent) * model.exponential(x, cfg)

    if lower == 0.0:
        raw = quad_halfline(integrand, cfg)
    else:
        raw = quad_finite(integrand, 0.0, -math.log(lower), cfg)
    norm = rgamma(s)
    logger.debug("L(%s)(%s) over [%g, 1] = %r", model.label, _fmt(s), lower, complex(raw) * norm)
    return Estimate(norm * complex(raw), abs(norm) * raw.error)


# ---------------------------------------------------------------------------
# Words along paths
# ---------------------------------------------------------------------------

def path_iterated_integral(
    path: Path,
    alpha: FormSpec,
    beta: FormSpec,
    s: complex,
    cfg: Optional[QuadratureConfig] = None,
    *,
    order: str = "right",
    shift: complex = 0j,
) -> Estimate:
    """
    (1/Gamma(s)) times the path integral of alpha against the (s-1)-th power of
    the running integral of beta.

    With order="right" the running integral goes from z to the end of the path
    (the word alpha beta^{s-1}); with order="left" from the start of the path
    to z (the word beta^{s-1} alpha). ``shift`` is added to the running
    integral and stands for the part of a longer path not integrated here.

    A line leaving 0 is integrated in exponential coordinates
    z = end exp(-x), where the running integral of dz/z is x itself.

    Raises:
        ConvergenceConstraint: Re(s) <= 0 with no shift
        DivergentIntegral: a non-integrable endpoint singularity
    """
    cfg = cfg or DEFAULT_QUADRATURE
    s = complex(s)
    shift = complex(shift)
    if order not in ("right", "left"):
        raise ValueError(f"order must be 'right' or 'left', got {order!r}")
    if path.is_empty:
        return Estimate(0j, 0.0)
    if s.real <= 0 and shift == 0:
        raise ConvergenceConstraint(f"iterated integral needs Re(s) > 0, got s={_fmt(s)}")

    exponent = s - 1.0
    segments = path.segments
    count = len(segments)
    incs: Dict[int, complex] = {}

    def increment(j: int) -> complex:
        if j not in incs:
            incs[j] = _segment_increment(segments[j], beta, cfg)
        return incs[j]

    values: List[complex] = []
    error = 0.0
    for j, segment in enumerate(segments):
        if order == "right":
            offset = _fsum_complex([increment(i) for i in range(j + 1, count)]) + shift
        else:
            offset = _fsum_complex([increment(i) for i in range(j)]) + shift

        radial = (
            order == "right"
            and beta.kind == FormKind.DZ_OVER_Z
            and isinstance(segment, Line)
            and segment.start == 0
            and segment.end != 0
        )
        if radial:
            end = segment.end

            def radial_integrand(x, end=end, offset=offset):
                return branch_power(x + offset, exponent) * _density_times_z(alpha, x, end)

            piece = quad_halfline(radial_integrand, cfg)
        else:

            def integrand(t, from_a, from_b, segment=segment, offset=offset):
                z = _segment_point(segment, t, from_a, from_b)
                with np.errstate(divide="ignore", invalid="ignore"):
                    density = alpha.density(z) * segment.derivative(t)
                    if order == "right":
                        if beta.is_standard:
                            running = segment.remaining(beta, t, from_b)
                        else:
                            running = _weighted_tail(segment, beta, t, from_b, cfg)
                    elif beta.is_standard:
                        running = segment.partial(beta, 0.0, t)
                    else:
                        running = _weighted_head(segment, beta, t, cfg)
                return density * branch_power(running + offset, exponent)

            piece = quad_finite(integrand, 0.0, 1.0, cfg, with_offsets=True)
        values.append(complex(piece))
        error += piece.error

    norm = rgamma(s)
    return Estimate(norm * _fsum_complex(values), abs(norm) * error)


def polylog_integral(
    s: complex,
    w: complex,
    path: Optional[Path] = None,
    cfg: Optional[QuadratureConfig] = None,
) -> Estimate:
    """
    Li_s(w) as the integral of dz/(1-z)(dz/z)^{s-1} from 0 to w, along the
    straight line unless a path is given. The running logarithm is carried
    by the path, so a path winding about 1 lands on another branch.

    Raises:
        SpecError: the path does not run from 0 to w
        ConvergenceConstraint: Re(s) <= 0
    """
    cfg = cfg or DEFAULT_QUADRATURE
    s = complex(s)
    w = complex(w)
    if w == 0:
        return Estimate(0j, 0.0)
    if s.real <= 0:
        raise ConvergenceConstraint(f"polylogarithm integral needs Re(s) > 0, got s={_fmt(s)}")
    path = path or Path.straight(0, w)
    if path.is_empty or path.start != 0:
        raise SpecError("polylogarithm path must start at 0")
    if abs(path.end - w) > 1e-12 * max(1.0, abs(w)):
        raise SpecError(f"polylogarithm path ends at {path.end}, not at w={w}")
    return path_iterated_integral(path, DZ_OVER_ONE_MINUS_Z, DZ_OVER_Z, s, cfg)


@dataclass(frozen=True)
class IteratedIntegralRequest:
    """
    A word of (form, exponent) letters along a path. Supported shapes are a
    single letter beta^e, alpha beta^e and beta^e alpha; exponents follow the
    convention int beta^n = (int beta)^n / n!.
    """

    path: Path
    word: Tuple[Tuple[FormSpec, complex], ...]

    def __post_init__(self):
        word = tuple((form, complex(e)) for form, e in self.word)
        object.__setattr__(self, "word", word)
        if not word:
            raise SpecError("empty word")
        complex_letters = sum(1 for _, e in word if e.imag != 0 or e.real != round(e.real))
        if complex_letters > 2:
            raise DepthUnsupported("at most two non-integer exponents per word")

    def evaluate(self, cfg: Optional[QuadratureConfig] = None) -> Estimate:
        cfg = cfg or DEFAULT_QUADRATURE
        word = self.word
        if len(word) == 1:
            form, e = word[0]
            total = integrate_form(self.path, form, cfg)
            if e == 0:
                return Estimate(1.0, 0.0)
            return Estimate(principal_power(complex(total), e) * rgamma(e + 1), total.error)
        if len(word) == 2:
            (first, e1), (second, e2) = word
            if e1 == 1:
                return path_iterated_integral(self.path, first, second, e2 + 1, cfg, order="right")
            if e2 == 1:
                return path_iterated_integral(self.path, second, first, e1 + 1, cfg, order="left")
        raise DepthUnsupported(
            "supported words are beta^e, alpha beta^e and beta^e alpha"
        )


# ---------------------------------------------------------------------------
# Iterative property
# ---------------------------------------------------------------------------

def iterativity_check(
    v: complex,
    u: complex,
    t: float = 0.2,
    model: Optional[SeriesModel] = None,
    cfg: Optional[QuadratureConfig] = None,
    tolerance: float = 1e-8,
) -> CheckResult:
    """
    Both sides of the iterative property on the line [t, 1]:

        B^{v+u-1}/Gamma(v+u)  vs  (1/(Gamma(v)Gamma(u))) int P^{v-1} R^{u-1} beta

    with beta = dz/z (or F(z) dz/z), B its total integral and P, R its
    integrals before and after the running point.
    """
    cfg = cfg or DEFAULT_QUADRATURE
    v = complex(v)
    u = complex(u)
    if v.real <= 0 or u.real <= 0:
        raise ConvergenceConstraint(f"iterativity needs Re(v), Re(u) > 0, got v={_fmt(v)}, u={_fmt(u)}")
    if not 0.0 <= t < 1.0:
        raise SpecError(f"t must lie in [0, 1), got {t!r}")

    beta = DZ_OVER_Z if model is None else FormSpec.weighted(model)
    line = Line(t, 1.0)
    total = _segment_increment(line, beta, cfg)
    expected = principal_power(total, v + u - 1.0) * rgamma(v + u)

    def integrand(tau, from_a, from_b):
        z = _segment_point(line, tau, from_a, from_b)
        if beta.is_standard:
            head = line.partial(beta, 0.0, tau)
            tail = line.remaining(beta, tau, from_b)
        else:
            head = _weighted_head(line, beta, tau, cfg)
            tail = _weighted_tail(line, beta, tau, from_b, cfg)
        with np.errstate(divide="ignore", invalid="ignore"):
            density = beta.density(z) * line.delta
        return branch_power(head, v - 1.0) * branch_power(tail, u - 1.0) * density

    raw = quad_finite(integrand, 0.0, 1.0, cfg, with_offsets=True)
    norm = rgamma(v) * rgamma(u)
    label = "dz/z" if model is None else model.label
    return CheckResult.from_values(
        name=f"iterativity v={_fmt(v)} u={_fmt(u)} on [{t:g},1] ({label})",
        computed=norm * complex(raw),
        expected=expected,
        tolerance=tolerance,
        error_estimate=abs(norm) * raw.error,
        provenance="iterative property: beta-integral collapse of nested powers",
    )


# ---------------------------------------------------------------------------
# Comultiplication
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComultiplicationResult:
    """Direct and comultiplied values of the integral over a composed path"""

    lhs: Estimate
    rhs: Estimate
    tail_estimate: float
    ratio: float
    terms: int
    # per segment of the first path, the products M_n D_n for n = 0..terms
    segment_terms: Tuple[Tuple[complex, ...], ...] = ()

    @property
    def difference(self) -> float:
        return abs(complex(self.lhs) - complex(self.rhs))


def domination_ratio(gamma: Path, total: complex, samples: int = DOMINATION_SAMPLES) -> float:
    """max over sampled z on gamma of |int_{z -> end} dz/z| / |total|"""
    if gamma.is_empty:
        return 0.0
    if total == 0:
        return math.inf
    largest = 0.0
    for t in np.linspace(0.0, 1.0, samples):
        j, local = gamma._locate(float(t))
        with np.errstate(divide="ignore", invalid="ignore"):
            try:
                r = complex(np.asarray(gamma.remaining(DZ_OVER_Z, j, local)).reshape(-1)[0])
            except DivergentIntegral:
                return math.inf
        if not np.isfinite(r):
            return math.inf
        largest = max(largest, abs(r))
    return largest / abs(total)


def _binomial_tail(e: complex, rho: float, terms: int) -> float:
    """sum_{n > terms} |binom(e, n)| rho^n"""
    b = abs(generalized_binomial(e, terms + 1)) * rho ** (terms + 1)
    total = 0.0
    n = terms + 1
    while n < terms + 5000:
        total += b
        b *= abs((e - n) / (n + 1)) * rho
        n += 1
        if b <= 1e-18 * total:
            break
    return total + b / (1.0 - rho)


def comultiplication_eval(
    gamma: Path,
    delta: Path,
    alpha: FormSpec,
    s: complex,
    terms: int = DEFAULT_TERMS,
    cfg: Optional[QuadratureConfig] = None,
    *,
    tail_tol: float = 1e-6,
) -> ComultiplicationResult:
    """
    The word alpha beta^{s-1}, beta = dz/z, over the composed path gamma delta,
    directly and through the comultiplication formula

        int_delta + sum_{n=0}^{N} int_gamma alpha beta^n * B^{s-1-n}/Gamma(s-n)

    with B = int_delta beta. When B = 0 the sum degenerates to
    int_delta + int_gamma.

    Raises:
        DominationViolated: the running integral over gamma is not dominated
            by |B| with a 10% margin on 64 sampled points
        TailNotSmall: the truncated binomial tail exceeds ``tail_tol``
    """
    cfg = cfg or DEFAULT_QUADRATURE
    s = complex(s)
    e = s - 1.0
    if terms < 0:
        raise ValueError("terms must be non-negative")
    if delta.is_empty:
        raise SpecError("the second path of a comultiplication must not be empty")

    full = concat(gamma, delta)
    direct = path_iterated_integral(full, alpha, DZ_OVER_Z, s, cfg)
    delta_part = path_iterated_integral(delta, alpha, DZ_OVER_Z, s, cfg)
    if gamma.is_empty:
        return ComultiplicationResult(direct, delta_part, 0.0, 0.0, terms)

    total = _fsum_complex(delta.increments(DZ_OVER_Z))
    if abs(total) <= 1e-14:
        head = path_iterated_integral(gamma, alpha, DZ_OVER_Z, s, cfg)
        rhs = Estimate(complex(delta_part) + complex(head), delta_part.error + head.error)
        logger.debug("comultiplication: degenerate case, int_delta dz/z = %r", total)
        return ComultiplicationResult(direct, rhs, 0.0, 0.0, terms)

    ratio = domination_ratio(gamma, total)
    if not ratio * DOMINATION_MARGIN < 1.0:
        raise DominationViolated(
            f"running integral over the first path reaches {ratio:.3g} x |int_delta dz/z|; "
            f"the expansion needs less than {1 / DOMINATION_MARGIN:.3g}"
        )

    weights = [principal_power(total, e - n) * rgamma(s - n) for n in range(terms + 1)]
    count = len(gamma.segments)
    incs = [segment.increment(DZ_OVER_Z) for segment in gamma.segments]

    segment_terms: List[Tuple[complex, ...]] = []
    pieces: List[complex] = [complex(delta_part)]
    error = delta_part.error
    abs_alpha = 0.0
    for j, segment in enumerate(gamma.segments):
        later = _fsum_complex(incs[j + 1:count])

        def rows(t, from_a, from_b, segment=segment, later=later):
            z = _segment_point(segment, t, from_a, from_b)
            density = alpha.density(z) * segment.derivative(t)
            r = segment.remaining(DZ_OVER_Z, t, from_b) + later
            out = np.empty((terms + 2, np.size(t)), dtype=complex)
            power = np.ones(np.shape(r), dtype=complex)
            for n in range(terms + 1):
                out[n] = density * power
                power = power * r / (n + 1)
            out[terms + 1] = np.abs(density)
            return out

        moments, moment_errors = quad_finite_rows(rows, 0.0, 1.0, cfg, with_offsets=True)
        products = tuple(complex(moments[n]) * weights[n] for n in range(terms + 1))
        segment_terms.append(products)
        pieces.extend(products)
        error += sum(abs(weights[n]) * float(moment_errors[n]) for n in range(terms + 1))
        abs_alpha += float(moments[terms + 1].real)

    scale = abs_alpha * abs(principal_power(total, e) * rgamma(s))
    tail = scale * _binomial_tail(e, ratio, terms)
    if tail > tail_tol:
        raise TailNotSmall(
            f"binomial tail after {terms} terms is {tail:.3g} (ratio {ratio:.3g}), above {tail_tol:g}"
        )
    rhs = Estimate(_fsum_complex(pieces), error + tail)
    logger.debug(
        "comultiplication: %d terms, ratio %.3g, |lhs - rhs| = %.3g",
        terms, ratio, abs(complex(direct) - complex(rhs)),
    )
    return ComultiplicationResult(direct, rhs, tail, ratio, terms, tuple(segment_terms))


def polylog_split(
    s: complex,
    w: complex,
    eta: float = 0.2,
    terms: int = DEFAULT_TERMS,
    cfg: Optional[QuadratureConfig] = None,
) -> ComultiplicationResult:
    """
    Li_s(w) directly and split at eta: the head [0 -> eta] is integrated with
    the full running logarithm, the rest [eta -> m] [m -> w] with
    m = eta^{2/3} w^{1/3} goes through the comultiplication formula.
    """
    cfg = cfg or DEFAULT_QUADRATURE
    s = complex(s)
    w = complex(w)
    if not 0.0 < eta < abs(w):
        raise SpecError(f"split point eta must lie in (0, |w|), got {eta!r}")
    middle = eta ** (2.0 / 3.0) * principal_power(w, 1.0 / 3.0)
    rest = Path.polyline(eta, middle, w)
    shift = _fsum_complex(rest.increments(DZ_OVER_Z))
    head = path_iterated_integral(
        Path.straight(0, eta), DZ_OVER_ONE_MINUS_Z, DZ_OVER_Z, s, cfg, shift=shift
    )
    split = comultiplication_eval(
        Path.straight(eta, middle),
        Path.straight(middle, w),
        DZ_OVER_ONE_MINUS_Z,
        s,
        terms,
        cfg,
    )
    direct = polylog_integral(s, w, cfg=cfg)
    rhs = Estimate(complex(head) + complex(split.rhs), head.error + split.rhs.error)
    return ComultiplicationResult(direct, rhs, split.tail_estimate, split.ratio, terms, split.segment_terms)


def homotopy_invariance_check(
    alpha: FormSpec,
    s: complex,
    path_a: Path,
    path_b: Path,
    cfg: Optional[QuadratureConfig] = None,
    tolerance: float = 1e-7,
) -> CheckResult:
    """|int_{path_a} - int_{path_b}| for the word alpha (dz/z)^{s-1}"""
    cfg = cfg or DEFAULT_QUADRATURE
    if path_a.is_empty or path_b.is_empty:
        raise SpecError("homotopy check needs non-empty paths")
    if abs(path_a.start - path_b.start) > 1e-12 or abs(path_a.end - path_b.end) > 1e-12:
        raise SpecError("homotopic paths must share their endpoints")
    a = path_iterated_integral(path_a, alpha, DZ_OVER_Z, s, cfg)
    b = path_iterated_integral(path_b, alpha, DZ_OVER_Z, s, cfg)
    return CheckResult.from_values(
        name=f"homotopy invariance s={_fmt(s)} ({len(path_a.segments)} vs {len(path_b.segments)} segments)",
        computed=complex(a),
        expected=complex(b),
        tolerance=tolerance,
        error_estimate=a.error + b.error,
        provenance="homotopy-functional corollary of the comultiplication formula",
    )


# ---------------------------------------------------------------------------
# Haar and multiplicative iterativity
# ---------------------------------------------------------------------------

def haar_check(
    model: SeriesModel,
    alpha: float,
    s: complex,
    cfg: Optional[QuadratureConfig] = None,
    tolerance: float = 1e-8,
) -> CheckResult:
    """
    int F(z^alpha)(alpha dz/z)^s against int F(z)(dz/z)^s; the first is
    alpha^s (1/Gamma(s)) int x^{s-1} G(alpha x) dx
    """
    cfg = cfg or DEFAULT_QUADRATURE
    s = complex(s)
    alpha = float(alpha)
    if alpha <= 0:
        raise SpecError(f"Haar scaling must be positive, got {alpha!r}")
    if s.real <= model.convergence_abscissa:
        raise ConvergenceConstraint(
            f"{model.label}: Haar check needs Re(s) > {model.convergence_abscissa:g}"
        )

    def integrand(x):
        return branch_power(x, s - 1.0) * model.exponential(alpha * x, cfg)

    raw = quad_halfline(integrand, cfg, upper=cfg.tail_cutoff / min(alpha, 1.0))
    norm = principal_power(alpha, s) * rgamma(s)
    scaled = Estimate(norm * complex(raw), abs(norm) * raw.error)
    plain = power_iterated_integral(model, s, cfg=cfg)
    return CheckResult.from_values(
        name=f"Haar {model.label} alpha={alpha:g} s={_fmt(s)}",
        computed=complex(scaled),
        expected=complex(plain),
        tolerance=tolerance,
        error_estimate=scaled.error + plain.error,
        provenance="Haar property: invariance under z -> z^alpha",
    )


def _gap_head_bound(model: SeriesModel, k: int, s: complex, x0: float) -> float:
    """Bound on the transform of the k-gap series over [0, x0]"""
    c, _ = model.bieberbach_constants
    r = model.bieberbach_order
    sigma = s.real / k
    a = (r + 1.0) / k
    b = r / k
    peak = (r / (k * math.e)) ** b if r > 0 else 1.0
    integral_part = math.gamma(a) / k * x0 ** (sigma - a) / (sigma - a)
    peak_part = peak * x0 ** (sigma - b) / (sigma - b)
    return c * abs(rgamma(s / k)) * (integral_part + peak_part)


def gap_transform_integral(
    model: SeriesModel,
    k: int,
    s: complex,
    cfg: Optional[QuadratureConfig] = None,
    head_tol: Optional[float] = None,
) -> Estimate:
    """
    The transform of the k-gap series sum a_n z^{n^k} at exponent s/k,

        (1/Gamma(s/k)) int_0^oo x^{s/k-1} sum a_n exp(-n^k x) dx,

    which the multiplicative iterative property equates with L(F)(s). The
    piece below a cutoff x0 is bounded, not integrated, and the bound is
    added to the error.

    Raises:
        ConvergenceConstraint: Re(s) <= k + Bieberbach order
        SlowConvergence: the cutoff needs too many series terms
    """
    cfg = cfg or DEFAULT_QUADRATURE
    s = complex(s)
    if k < 1:
        raise SpecError("gap exponent k must be a positive integer")
    if k == 1:
        return power_iterated_integral(model, s, cfg=cfg)
    r = model.bieberbach_order
    if s.real <= r + k:
        raise ConvergenceConstraint(
            f"{model.label}: the {k}-gap transform needs Re(s) > {r + k:g}, got s={_fmt(s)}"
        )

    target = head_tol if head_tol is not None else 0.1 * cfg.rel_tol
    x0 = 1.0
    while _gap_head_bound(model, k, s, x0) > target:
        x0 *= 0.5
        if x0 < 1e-14:
            raise SlowConvergence(f"{k}-gap transform at s={_fmt(s)}: head bound does not settle")
    head = _gap_head_bound(model, k, s, x0)

    def terms_needed(x: float) -> int:
        return int(math.ceil((_GAP_EXPONENT_CUTOFF / x) ** (1.0 / k))) + 1

    top = terms_needed(x0)
    if top > _GAP_MAX_TERMS:
        raise SlowConvergence(f"{k}-gap transform at s={_fmt(s)} needs {top} series terms")
    coeffs = model.coefficients(top)[1:]
    powers = np.arange(1, top + 1, dtype=float) ** k
    exponent = s / k - 1.0

    def integrand(x):
        x = np.asarray(x, dtype=float)
        flat = x.reshape(-1)
        series = np.zeros(flat.shape, dtype=complex)
        for start in range(0, flat.size, _GAP_CHUNK):
            chunk = flat[start:start + _GAP_CHUNK]
            m = min(top, terms_needed(float(chunk.min())))
            series[start:start + _GAP_CHUNK] = np.exp(-np.outer(chunk, powers[:m])) @ coeffs[:m]
        return branch_power(x, exponent) * series.reshape(x.shape)

    raw = quad_halfline(integrand, cfg, lower=x0)
    norm = rgamma(s / k)
    logger.debug("%d-gap transform of %s: cutoff %.3g, %d terms", k, model.label, x0, top)
    return Estimate(norm * complex(raw), abs(norm) * raw.error + head)


def multiplicative_iterativity_eval(
    model: SeriesModel,
    k: int,
    s: complex,
    cfg: Optional[QuadratureConfig] = None,
    tolerance: float = 1e-6,
) -> CheckResult:
    """The k-gap transform at s/k against the L-transform at s"""
    cfg = cfg or DEFAULT_QUADRATURE
    gap = gap_transform_integral(model, k, s, cfg)
    plain = power_iterated_integral(model, s, cfg=cfg)
    return CheckResult.from_values(
        name=f"multiplicative iterativity {model.label} k={k} s={_fmt(s)}",
        computed=complex(gap),
        expected=complex(plain),
        tolerance=tolerance,
        error_estimate=gap.error + plain.error,
        provenance="multiplicative iterative property (gap series)",
    )


# ---------------------------------------------------------------------------
# Multiple iterated integrals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightedSlot:
    """
    One slot of a multiple iterated integral as its exponential-coordinate
    kernel G(x) = F(exp(-x)); ``order`` is k with G(x) = O(x^{-k-1}) at 0
    """

    kernel: Callable[[np.ndarray], np.ndarray]
    order: float = 0.0
    label: str = "kernel"

    @classmethod
    def from_model(cls, model: SeriesModel) -> "WeightedSlot":
        return cls(kernel=model.exponential, order=model.convergence_abscissa - 1.0, label=model.label)


def hurwitz_kernel(z: complex) -> WeightedSlot:
    """exp(-(z-1)x)/(exp(x) - 1): the slot whose indices run over n + z, n >= 0"""
    z = complex(z)
    if z.real <= 0:
        raise ConvergenceConstraint(f"Hurwitz shift needs Re(z) > 0, got z={_fmt(z)}")

    def kernel(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            return np.exp(-(z - 1.0) * x) / np.expm1(x)

    return WeightedSlot(kernel=kernel, order=0.0, label=f"hurwitz(z={_fmt(z)})")


Slot = Union[SeriesModel, WeightedSlot]


def _slot_integral(slot: WeightedSlot, s: complex, cfg: QuadratureConfig) -> Estimate:
    if s.real <= slot.order + 1.0:
        raise ConvergenceConstraint(
            f"{slot.label}: needs Re(s) > {slot.order + 1.0:g}, got s={_fmt(s)}"
        )

    def integrand(x):
        return branch_power(x, s - 1.0) * slot.kernel(x)

    raw = quad_halfline(integrand, cfg)
    norm = rgamma(s)
    return Estimate(norm * complex(raw), abs(norm) * raw.error)


def multiple_iterated_integral(
    slots: Sequence[Slot],
    s_tuple: Sequence[complex],
    cfg: Optional[QuadratureConfig] = None,
) -> Estimate:
    """
    Depth <= 2 multiple iterated integral. ``s_tuple[0]`` belongs to the outer
    slot (the largest summation index), so for two copies of z/(1-z)

        (s1, s2) -> sum_{n1 > n2 >= 1} n1^{-s1} n2^{-s2}

    Evaluated after the substitution x = y tau, u = y (1 - tau):

        (1/(Gamma(s1)Gamma(s2))) int_0^oo y^{s1+s2-1} G_in(y) J(y) dy,
        J(y) = int_0^1 tau^{s1-1} (1-tau)^{s2-1} G_out(y tau) dtau

    with J memoised on the outer quadrature grid.

    Raises:
        DepthUnsupported: more than two slots
        ConvergenceConstraint: exponents outside the convergence region
    """
    cfg = cfg or DEFAULT_QUADRATURE
    s_tuple = tuple(complex(v) for v in s_tuple)
    if not slots or len(slots) != len(s_tuple):
        raise SpecError(f"{len(slots)} slots need as many exponents, got {len(s_tuple)}")
    if len(slots) > 2:
        raise DepthUnsupported(f"depth {len(slots)} multiple integrals are not evaluated; depth <= 2")

    if len(slots) == 1:
        only = slots[0]
        if isinstance(only, SeriesModel):
            return power_iterated_integral(only, s_tuple[0], cfg=cfg)
        return _slot_integral(only, s_tuple[0], cfg)

    outer, inner = (
        slot if isinstance(slot, WeightedSlot) else WeightedSlot.from_model(slot) for slot in slots
    )
    s_out, s_in = s_tuple
    if s_in.real <= 0:
        raise ConvergenceConstraint(f"inner exponent needs Re > 0, got {_fmt(s_in)}")
    if s_out.real <= outer.order + 1.0:
        raise ConvergenceConstraint(
            f"outer exponent needs Re > {outer.order + 1.0:g}, got {_fmt(s_out)}"
        )
    excess = (s_out + s_in).real - inner.order - outer.order - 2.0
    if excess <= 0:
        raise ConvergenceConstraint(
            f"exponent sum needs Re > {inner.order + outer.order + 2.0:g}, got {_fmt(s_out + s_in)}"
        )

    floor = min(1e-2, max(_OUTER_FLOOR, (1e-2 * cfg.rel_tol) ** (1.0 / excess)))
    cache: Dict[float, complex] = {}

    def fill(ys: np.ndarray) -> None:
        def rows(tau, from_a, from_b):
            weight = branch_power(from_a, s_out - 1.0) * branch_power(from_b, s_in - 1.0)
            return weight[None, :] * outer.kernel(ys[:, None] * from_a[None, :])

        values, _ = quad_finite_rows(rows, 0.0, 1.0, cfg, with_offsets=True)
        cache.update(zip(ys.tolist(), values.tolist()))

    def inner_values(y: np.ndarray) -> np.ndarray:
        flat = y.reshape(-1)
        missing = np.array([v for v in np.unique(flat).tolist() if v not in cache], dtype=float)
        if missing.size:
            fill(missing)
        return np.array([cache[v] for v in flat.tolist()], dtype=complex).reshape(y.shape)

    def integrand(y):
        y = np.asarray(y, dtype=float)
        return branch_power(y, s_out + s_in - 1.0) * inner.kernel(y) * inner_values(y)

    raw = quad_halfline(integrand, cfg, lower=floor)
    head = abs(complex(integrand(np.array([floor]))[0])) * floor / excess
    norm = rgamma(s_out) * rgamma(s_in)
    logger.debug(
        "depth-2 integral (%s, %s) at %s: %d memoised inner values",
        outer.label, inner.label, s_tuple, len(cache),
    )
    return Estimate(norm * complex(raw), abs(norm) * (raw.error + head))


# ---------------------------------------------------------------------------
# Fractional integrals and the dual expression
# ---------------------------------------------------------------------------

def fractional_integral(
    f: Callable[[np.ndarray], np.ndarray],
    s: complex,
    x,
    cfg: Optional[QuadratureConfig] = None,
):
    """
    Riemann-Liouville integral I_s f(x) = (1/Gamma(s)) int_0^x (x-t)^{s-1} f(t) dt,
    the transform over [exp(-x), 1] in exponential coordinates, computed as

        x^s/Gamma(s) int_0^1 tau^{s-1} f(x (1 - tau)) dtau

    Vectorised over x; ``f`` must accept arrays of any shape. Returns an
    Estimate for scalar x.
    """
    cfg = cfg or DEFAULT_QUADRATURE
    s = complex(s)
    if s.real <= 0:
        raise ConvergenceConstraint(f"fractional integral needs Re(s) > 0, got s={_fmt(s)}")
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    flat = xs.reshape(-1)

    def rows(tau, from_a, from_b):
        return branch_power(from_a, s - 1.0)[None, :] * np.asarray(
            f(flat[:, None] * from_b[None, :]), dtype=complex
        )

    values, errors = quad_finite_rows(rows, 0.0, 1.0, cfg, with_offsets=True)
    scale = branch_power(flat, s) * rgamma(s)
    out = (values * scale).reshape(xs.shape)
    if scalar:
        return Estimate(complex(out.reshape(-1)[0]), float(np.abs(scale[0]) * errors[0]))
    return out


def dual_zeta(
    model: SeriesModel,
    s: complex,
    cfg: Optional[QuadratureConfig] = None,
) -> Estimate:
    """
    L(F)(s) by iteration over dt/(1-t): after t -> 1 - t,

        (1/Gamma(s)) int_0^1 (-log(1-u))^{s-1} F(1-u)/(1-u) du

    Raises:
        ConvergenceConstraint: Re(s) at or below the model's abscissa
    """
    cfg = cfg or DEFAULT_QUADRATURE
    s = complex(s)
    if s.real <= model.convergence_abscissa:
        raise ConvergenceConstraint(
            f"{model.label}: dual expression needs Re(s) > {model.convergence_abscissa:g}"
        )

    def integrand(u, from_a, from_b):
        near = u <= 0.5
        with np.errstate(divide="ignore", invalid="ignore"):
            log_term = np.where(near, -np.log1p(-from_a), -np.log(from_b))
            z = np.where(near, 1.0 - from_a, from_b)
            return branch_power(log_term, s - 1.0) * model.exponential(log_term, cfg) / z

    raw = quad_finite(integrand, 0.0, 1.0, cfg, with_offsets=True)
    norm = rgamma(s)
    return Estimate(norm * complex(raw), abs(norm) * raw.error)
