"""
Series models - the power series F(z) = sum a_n z^n fed to the L-transform

Every model carries a vectorised coefficient rule, its Bieberbach order and,
when one exists, an exact rational closed form used near z = 1.
"""

import cmath
import logging
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from ..utils.config import QuadratureConfig
from .arithmetic import (
    class_number,
    ideal_counts,
    is_fundamental_discriminant,
    kronecker_symbol,
    moebius_sieve,
    prime_sieve,
    primitive_root,
    unit_count,
)
from .errors import (
    CapExceeded,
    InvalidCharacter,
    InvalidRational,
    NoClosedForm,
    NotPrime,
    SingularAt1,
    SlowConvergence,
    TrivialCharacterError,
    UnsupportedField,
)
from .numerics import DEFAULT_QUADRATURE, LaurentCoefficients

logger = logging.getLogger(__name__)

DEFAULT_SIEVE_CAP = 10**6
LAURENT_ORDERS = 8

_T = sympy.Symbol("t")
_Y = sympy.Symbol("y")
_ZETA = sympy.Symbol("zeta")


def _exact(value: Any) -> sympy.Expr:
    """Exact sympy number for an int, Fraction or complex float (floats taken at their decimal repr)"""
    if isinstance(value, sympy.Basic):
        return value
    if isinstance(value, (int, np.integer)):
        return sympy.Integer(int(value))
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    c = complex(value)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise InvalidRational(f"coefficient {value!r} is not finite")
    re, im = Fraction(repr(c.real)), Fraction(repr(c.imag))
    return sympy.Rational(re.numerator, re.denominator) + sympy.I * sympy.Rational(im.numerator, im.denominator)


class CyclotomicField:
    """
    Q(zeta_m) with elements kept as polynomials in zeta reduced modulo the
    m-th cyclotomic polynomial, so equality with zero is decided exactly
    """

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        self.order = order
        self._modulus = sympy.Poly(sympy.cyclotomic_poly(order, _ZETA), _ZETA)
        self._root = cmath.exp(2j * math.pi / order)

    @property
    def degree(self) -> int:
        return self._modulus.degree()

    def reduce(self, expr: Any) -> sympy.Expr:
        return sympy.Poly(_exact(expr), _ZETA).rem(self._modulus).as_expr()

    def power(self, k: int) -> sympy.Expr:
        return self.reduce(_ZETA ** (k % self.order))

    def to_complex(self, expr: sympy.Expr) -> complex:
        coeffs = [complex(c) for c in sympy.Poly(expr, _ZETA).all_coeffs()]
        return complex(np.polyval(coeffs, self._root))

    def to_number(self, expr: sympy.Expr) -> sympy.Expr:
        """The element as a sympy number in exp(2 pi i/m)"""
        return sympy.sympify(expr).subs(_ZETA, sympy.exp(2 * sympy.pi * sympy.I / self.order))


def _poly_expr(coeffs: Sequence[sympy.Expr], var: sympy.Symbol) -> sympy.Expr:
    return sum((c * var**k for k, c in enumerate(coeffs)), sympy.Integer(0))


def _ascending(poly_expr: sympy.Expr, var: sympy.Symbol) -> List[sympy.Expr]:
    poly = sympy.Poly(poly_expr, var)
    return [sympy.nsimplify(c) if c.is_Float else c for c in reversed(poly.all_coeffs())]


def _to_complex_array(coeffs: Sequence[sympy.Expr]) -> np.ndarray:
    return np.array([complex(sympy.N(c, 20)) for c in coeffs], dtype=complex)


class RationalClosedForm:
    """
    F(z) = p(z)/q(z) with exact coefficients.

    Near z = 1 the function is evaluated in y = z - 1 after cancelling common
    factors, F = y^v P(y)/Q(y) with P(0), Q(0) != 0, so that F(exp(-x)) keeps
    full relative precision as x -> 0.

    With a cyclotomic ``field`` the numerator lives in Q(zeta_m) and the
    denominator must be rational and squarefree. Only the powers of y are
    cancelled then, which is all the expansion at z = 1 needs.
    """

    def __init__(
        self,
        numerator: Sequence[Any],
        denominator: Sequence[Any],
        field: Optional[CyclotomicField] = None,
    ):
        self.field = field
        if field is None:
            self.numerator = tuple(_exact(c) for c in numerator)
            self.denominator = tuple(_exact(c) for c in denominator)
        else:
            self.numerator = tuple(field.reduce(c) for c in numerator)
            self.denominator = tuple(_exact(c) for c in denominator)
            if not all(c.is_Rational for c in self.denominator):
                raise InvalidRational("denominator coefficients must be rational over a cyclotomic field")
        if all(c == 0 for c in self.denominator):
            raise InvalidRational("denominator is identically zero")

        self._p = self._complex(self.numerator)
        self._q = self._complex(self.denominator)

        if field is None:
            num_coeffs, den_coeffs = self._shift_cancelled()
        else:
            den_poly = sympy.Poly(_poly_expr(self.denominator, _T), _T)
            if sympy.gcd(den_poly, den_poly.diff(_T)).degree() > 0:
                raise InvalidRational("denominator over a cyclotomic field must be squarefree")
            num_coeffs = self._shift_exact(self.numerator)
            den_coeffs = self._shift_exact(self.denominator)

        num_val = next((k for k, c in enumerate(num_coeffs) if c != 0), 0)
        den_val = next(k for k, c in enumerate(den_coeffs) if c != 0)
        self.valuation = num_val - den_val if any(c != 0 for c in num_coeffs) else 0
        self._p_tilde_exact = num_coeffs[num_val:] or [sympy.Integer(0)]
        self._q_tilde_exact = den_coeffs[den_val:]
        self._p_tilde = self._complex(self._p_tilde_exact)
        self._q_tilde = self._complex(self._q_tilde_exact)

        degree = max(len(self._p), len(self._q)) - 1
        self._shift_radius = min(0.5, 1.0 / max(degree, 1))

    def _complex(self, coeffs: Sequence[sympy.Expr]) -> np.ndarray:
        if self.field is None:
            return _to_complex_array(coeffs)
        return np.array([self.field.to_complex(c) for c in coeffs], dtype=complex)

    def _shift_cancelled(self) -> Tuple[List[sympy.Expr], List[sympy.Expr]]:
        shifted = sympy.expand(_poly_expr(self.numerator, 1 + _Y)) / sympy.expand(
            _poly_expr(self.denominator, 1 + _Y)
        )
        try:
            shifted = sympy.cancel(shifted, extension=True)
        except (sympy.PolynomialError, NotImplementedError):
            shifted = sympy.cancel(shifted)
        num_y, den_y = sympy.fraction(shifted)
        num_coeffs = _ascending(sympy.expand(num_y), _Y) if num_y != 0 else [sympy.Integer(0)]
        return num_coeffs, _ascending(sympy.expand(den_y), _Y)

    def _shift_exact(self, coeffs: Sequence[sympy.Expr]) -> List[sympy.Expr]:
        """Coefficients of sum c_k (1 + y)^k in y, reduced in the field"""
        out = []
        for j in range(len(coeffs)):
            acc = sum(
                (sympy.binomial(k, j) * c for k, c in enumerate(coeffs) if k >= j and c != 0),
                sympy.Integer(0),
            )
            out.append(self.field.reduce(sympy.expand(acc)))
        return out

    # -- evaluation ---------------------------------------------------------

    def _evaluate(self, y: np.ndarray, z: np.ndarray) -> np.ndarray:
        out = np.empty(z.shape, dtype=complex)
        near = np.abs(y) <= self._shift_radius
        if near.any():
            yy = y[near]
            with np.errstate(divide="ignore", invalid="ignore"):
                out[near] = (
                    yy ** self.valuation
                    * np.polynomial.polynomial.polyval(yy, self._p_tilde)
                    / np.polynomial.polynomial.polyval(yy, self._q_tilde)
                )
        far = ~near
        if far.any():
            zz = z[far]
            with np.errstate(divide="ignore", invalid="ignore"):
                out[far] = np.polynomial.polynomial.polyval(
                    zz, self._p
                ) / np.polynomial.polynomial.polyval(zz, self._q)
        return out

    def __call__(self, z):
        scalar = np.ndim(z) == 0
        zz = np.atleast_1d(np.asarray(z, dtype=complex))
        out = self._evaluate(zz - 1.0, zz)
        return complex(out[0]) if scalar else out

    def exponential(self, x):
        """G(x) = F(exp(-x)), accurate for small |x|"""
        scalar = np.ndim(x) == 0
        xx = np.atleast_1d(np.asarray(x, dtype=complex))
        y = np.expm1(-xx)
        out = self._evaluate(y, 1.0 + y)
        return complex(out[0]) if scalar else out

    def shifted(self, y):
        """F(1 + y), accurate for small |y|"""
        scalar = np.ndim(y) == 0
        yy = np.atleast_1d(np.asarray(y, dtype=complex))
        out = self._evaluate(yy, 1.0 + yy)
        return complex(out[0]) if scalar else out

    # -- structure at z = 1 -------------------------------------------------

    @property
    def pole_order_at_1(self) -> int:
        return max(0, -self.valuation)

    @property
    def regular_at_1(self) -> bool:
        return self.valuation >= 0

    def _laurent_elements(self, count: int) -> List[sympy.Expr]:
        p, q = self._p_tilde_exact, self._q_tilde_exact
        out: List[sympy.Expr] = []
        for n in range(count):
            acc = p[n] if n < len(p) else sympy.Integer(0)
            for j in range(1, min(n, len(q) - 1) + 1):
                acc -= q[j] * out[n - j]
            if self.field is None:
                out.append(sympy.nsimplify(sympy.simplify(acc / q[0])))
            else:
                out.append(self.field.reduce(sympy.expand(acc / q[0])))
        return out

    def laurent_exact(self, count: int = LAURENT_ORDERS) -> List[sympy.Expr]:
        """Exact Laurent coefficients a_v, a_{v+1}, ... of F about z = 1"""
        elements = self._laurent_elements(count)
        if self.field is None:
            return elements
        return [self.field.to_number(c) for c in elements]

    def laurent_at_1(self, count: int = LAURENT_ORDERS) -> LaurentCoefficients:
        coeffs = self._laurent_elements(count)
        return LaurentCoefficients(
            center=1 + 0j,
            min_order=self.valuation,
            coefficients=tuple(self._element_complex(c) for c in coeffs),
            errors=tuple(0.0 for _ in coeffs),
            radius_used=0.0,
        )

    def _element_complex(self, element: sympy.Expr) -> complex:
        if self.field is None:
            return complex(sympy.N(element, 20))
        return self.field.to_complex(element)

    def expression(self) -> sympy.Expr:
        """F(t) as a sympy expression, cancelled unless it lives over a cyclotomic field"""
        if self.field is not None:
            numerator = [self.field.to_number(c) for c in self.numerator]
            return _poly_expr(numerator, _T) / _poly_expr(self.denominator, _T)
        expr = _poly_expr(self.numerator, _T) / _poly_expr(self.denominator, _T)
        try:
            return sympy.cancel(expr, extension=True)
        except (sympy.PolynomialError, NotImplementedError):
            return sympy.cancel(expr)

    def iterated_derivative_at_1(self, m: int) -> complex:
        """
        (t d/dt)^m F evaluated at t = 1, exactly

        Works on the Taylor coefficients b_n of F(1 + y): t d/dt = (1 + y) d/dy
        maps them to (n + 1) b_{n+1} + n b_n.
        """
        if self.valuation < 0:
            raise SingularAt1(f"(t d/dt)^{m} F has a pole at t = 1")
        count = max(m + 1 - self.valuation, 0)
        taylor = [sympy.Integer(0)] * self.valuation + self._laurent_elements(count)
        taylor = taylor[: m + 1]
        for _ in range(m):
            taylor = [(n + 1) * taylor[n + 1] + n * taylor[n] for n in range(len(taylor) - 1)]
        value = sympy.expand(taylor[0])
        if self.field is not None:
            return self.field.to_complex(self.field.reduce(value))
        return complex(sympy.N(value, 20))

    def denominator_roots(self) -> List[complex]:
        """Poles of F after cancellation"""
        if self.field is not None:
            return self._field_poles()
        _, den = sympy.fraction(self.expression())
        if not den.has(_T):
            return []
        return [complex(root) for root in sympy.Poly(den, _T).nroots(n=15)]

    def _field_poles(self) -> List[complex]:
        # the denominator is squarefree, so a root is cancelled iff the numerator vanishes there
        den = sympy.Poly(_poly_expr(self.denominator, _T), _T)
        if den.degree() == 0:
            return []
        scale = float(np.sum(np.abs(self._p))) or 1.0
        poles = []
        for root in den.nroots(n=15):
            r = complex(root)
            if abs(np.polynomial.polynomial.polyval(r, self._p)) > 1e-9 * scale:
                poles.append(r)
        return poles

    def unit_circle_pole_order(self) -> int:
        """Largest multiplicity of a pole on |z| = 1; rejects poles inside the disc"""
        if self.field is not None:
            factors = [(r, 1) for r in self._field_poles()]
        else:
            _, den = sympy.fraction(self.expression())
            if not den.has(_T):
                return 0
            _, sqf = sympy.Poly(den, _T).sqf_list()
            factors = [
                (complex(root), multiplicity)
                for factor, multiplicity in sqf
                if factor.degree() > 0
                for root in factor.nroots(n=15)
            ]
        order = 0
        for root, multiplicity in factors:
            modulus = abs(root)
            if modulus < 1 - 1e-9:
                raise InvalidRational(f"pole at {root:.6g} inside the unit disc")
            if abs(modulus - 1) <= 1e-9:
                order = max(order, multiplicity)
        return order


class _RecurrenceRule:
    """Coefficients of p/q by the linear recurrence q_0 a_n = p_n - sum q_j a_{n-j}"""

    def __init__(self, numerator: Sequence[int], denominator: Sequence[int]):
        self._p = [Fraction(c) for c in numerator]
        self._q = [Fraction(c) for c in denominator]
        self._exact: List[Fraction] = []
        self._values = np.zeros(0, dtype=complex)
        self._lock = threading.Lock()

    def upto(self, n_max: int) -> np.ndarray:
        with self._lock:
            if n_max >= len(self._exact):
                q0 = self._q[0]
                for n in range(len(self._exact), n_max + 1):
                    acc = self._p[n] if n < len(self._p) else Fraction(0)
                    for j in range(1, min(n, len(self._q) - 1) + 1):
                        acc -= self._q[j] * self._exact[n - j]
                    self._exact.append(acc / q0)
                self._values = np.array([float(c) for c in self._exact], dtype=complex)
            return self._values

    def __call__(self, n: np.ndarray) -> np.ndarray:
        n = np.asarray(n, dtype=np.int64)
        if n.size == 0:
            return np.zeros(n.shape, dtype=complex)
        return self.upto(int(n.max()))[n]


class _SievedRule:
    """Coefficients looked up in a table built up to a fixed cap"""

    def __init__(self, table: np.ndarray, label: str):
        self._table = table.astype(complex)
        self._table.setflags(write=False)
        self._label = label

    @property
    def cap(self) -> int:
        return len(self._table) - 1

    def __call__(self, n: np.ndarray) -> np.ndarray:
        n = np.asarray(n, dtype=np.int64)
        if n.size and int(n.max()) > self.cap:
            raise CapExceeded(
                f"{self._label}: coefficient a_{int(n.max())} requested beyond sieve cap {self.cap}"
            )
        return self._table[n]


class _GrowingRule:
    """Coefficients from a table builder, rebuilt with doubling size up to a cap"""

    def __init__(self, builder: Callable[[int], np.ndarray], cap: int, label: str):
        self._builder = builder
        self._cap = cap
        self._label = label
        self._table = np.zeros(1, dtype=complex)
        self._lock = threading.Lock()

    @property
    def cap(self) -> int:
        return self._cap

    def upto(self, n_max: int) -> np.ndarray:
        if n_max > self._cap:
            raise CapExceeded(
                f"{self._label}: coefficient a_{n_max} requested beyond sieve cap {self._cap}"
            )
        with self._lock:
            if n_max >= len(self._table):
                size = min(self._cap, max(n_max, 2 * len(self._table), 1024))
                self._table = self._builder(size).astype(complex)
            return self._table

    def __call__(self, n: np.ndarray) -> np.ndarray:
        n = np.asarray(n, dtype=np.int64)
        if n.size == 0:
            return np.zeros(n.shape, dtype=complex)
        return self.upto(int(n.max()))[n]


@dataclass(frozen=True, eq=False)
class SeriesModel:
    """
    A power series F(z) = sum_{n>=1} a_n z^n with growth metadata
    """

    label: str
    coefficient_rule: Callable[[np.ndarray], np.ndarray]
    bieberbach_order: float
    bieberbach_constants: Tuple[float, int] = (1.0, 1)
    closed_form: Optional[RationalClosedForm] = None
    kernel: Optional[Callable[[np.ndarray], np.ndarray]] = None
    abscissa: Optional[float] = None
    cap: Optional[int] = None
    factors: Tuple["SeriesModel", ...] = ()
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.bieberbach_order < 0:
            raise ValueError("bieberbach_order must be non-negative")

    @property
    def convergence_abscissa(self) -> float:
        """Re(s) beyond which the L-transform converges"""
        if self.abscissa is not None:
            return self.abscissa
        return self.bieberbach_order + 1.0

    @property
    def laurent_at_1(self) -> Optional[LaurentCoefficients]:
        if self.closed_form is None:
            return None
        return self.closed_form.laurent_at_1()

    def coefficient(self, n: int) -> complex:
        if n < 0:
            raise ValueError("coefficient index must be non-negative")
        if n == 0:
            return 0j
        return complex(self.coefficient_rule(np.array([n]))[0])

    def coefficients(self, n_max: int) -> np.ndarray:
        """a_0..a_{n_max} with a_0 = 0"""
        out = np.zeros(n_max + 1, dtype=complex)
        if n_max >= 1:
            out[1:] = self.coefficient_rule(np.arange(1, n_max + 1))
        return out

    def eval(self, z, cfg: Optional[QuadratureConfig] = None):
        return evaluate(self, z, cfg)

    def exponential(self, x, cfg: Optional[QuadratureConfig] = None):
        """G(x) = F(exp(-x)) for x > 0"""
        if self.closed_form is not None:
            return self.closed_form.exponential(x)
        if self.kernel is not None:
            return self.kernel(x)
        xx = np.asarray(x, dtype=float)
        if np.any(xx < 1e-3):
            raise SlowConvergence(
                f"{self.label}: no closed form to evaluate F(exp(-x)) near x = 0"
            )
        return evaluate(self, np.exp(-xx), cfg)

    def tail_bound(self, radius: float, n: int) -> float:
        """Bound on sum_{m>n} |a_m| r^m from the declared Bieberbach constants"""
        c, n0 = self.bieberbach_constants
        k = self.bieberbach_order
        m = max(n + 1, n0)
        ratio = radius * ((m + 1) / m) ** k
        if ratio >= 1:
            return math.inf
        return c * m**k * radius**m / (1 - ratio)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _partial_sum_terms(model: SeriesModel, radius: float, tol: float) -> int:
    n = 64
    while model.tail_bound(radius, n) > tol:
        n *= 2
        if model.cap is not None and n > model.cap:
            raise CapExceeded(f"{model.label}: partial sums need more than {model.cap} terms")
        if n > 10**7:
            raise SlowConvergence(f"{model.label}: partial sums at |z|={radius:g} do not settle")
    return n


def evaluate(model: SeriesModel, z, cfg: Optional[QuadratureConfig] = None):
    """
    F(z): the closed form when available, otherwise partial sums truncated
    where the Bieberbach tail bound drops below rel_tol

    Raises:
        SlowConvergence: |z| > 0.999 without a closed form
    """
    cfg = cfg or DEFAULT_QUADRATURE
    if model.closed_form is not None:
        return model.closed_form(z)

    scalar = np.ndim(z) == 0
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    radius = float(np.max(np.abs(zz))) if zz.size else 0.0
    if radius > 0.999:
        raise SlowConvergence(f"{model.label}: |z| = {radius:.6g} too close to the unit circle")
    if radius == 0:
        out = np.zeros(zz.shape, dtype=complex)
    else:
        n = _partial_sum_terms(model, radius, cfg.rel_tol)
        coeffs = model.coefficients(n)
        out = np.polynomial.polynomial.polyval(zz, coeffs)
    return complex(out[0]) if scalar else out


def s_gap_eval(
    model: SeriesModel,
    s: complex,
    z: float,
    cfg: Optional[QuadratureConfig] = None,
) -> complex:
    """
    The s-gap transform sum a_n exp(n^s log z) for real z in (0, 1)

    Raises:
        SlowConvergence: z too close to 1 or the terms do not decay
    """
    cfg = cfg or DEFAULT_QUADRATURE
    s = complex(s)
    if s.real <= 0:
        raise ValueError("s-gap transform needs Re(s) > 0")
    if not 0 < z < 1:
        raise ValueError("s-gap transform is evaluated at real z in (0, 1)")
    if s == 1:
        return complex(evaluate(model, z, cfg))
    if z > 0.999:
        raise SlowConvergence(f"s-gap transform at z = {z:g} is too close to 1")

    log_z = math.log(z)
    c, _ = model.bieberbach_constants
    k = model.bieberbach_order
    n = 16
    while True:
        idx = np.arange(1, 4 * n + 1, dtype=float)
        exponents = np.exp(s * np.log(idx))
        bound = c * idx**k * np.exp(log_z * exponents.real)
        tail = float(np.sum(bound[n:]))
        if tail < cfg.rel_tol * 1e-2 and bound[-1] < bound[n]:
            break
        n *= 2
        if n > 10**6 or (model.cap is not None and 4 * n > model.cap):
            raise SlowConvergence(f"s-gap transform at s={s} does not settle")
    coeffs = model.coefficients(n)[1:]
    terms = coeffs * np.exp(log_z * exponents[:n])
    return complex(np.sum(terms))


def iterated_derivative_at_1(model: SeriesModel, m: int) -> complex:
    """
    (t d/dt)^m F at t = 1, by exact symbolic differentiation

    Raises:
        NoClosedForm: model has no rational closed form
        SingularAt1: the closed form has a pole at t = 1
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if model.closed_form is None:
        raise NoClosedForm(f"{model.label} has no rational closed form")
    return model.closed_form.iterated_derivative_at_1(m)


def estimate_bieberbach_order(model: SeriesModel, sample_max: int = 10**4) -> float:
    """Least-squares slope of log|a_n| against log n, clamped at 0"""
    coeffs = np.abs(model.coefficients(sample_max)[1:])
    n = np.arange(1, sample_max + 1, dtype=float)
    mask = coeffs > 0
    if mask.sum() < 2:
        return 0.0
    slope, _ = np.polyfit(np.log(n[mask]), np.log(coeffs[mask]), 1)
    return max(0.0, float(slope))


def _declared_constant(rule: Callable[[np.ndarray], np.ndarray], k: float, n_max: int = 1024) -> float:
    n = np.arange(1, n_max + 1)
    ratios = np.abs(rule(n)) / n.astype(float) ** k
    return float(max(1.0, 2.0 * np.max(ratios)))


# ---------------------------------------------------------------------------
# Characters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharacterTable:
    """Dirichlet character of modulus f as the values chi(1), ..., chi(f)"""

    modulus: int
    values: Tuple[complex, ...]
    primitive: bool = False

    def __post_init__(self):
        f = self.modulus
        if f < 1 or len(self.values) != f:
            raise InvalidCharacter(f"character mod {f} needs exactly {f} values")
        values = tuple(complex(v) for v in self.values)
        object.__setattr__(self, "values", values)
        for a in range(1, f + 1):
            coprime = math.gcd(a, f) == 1
            if coprime == (abs(self(a)) < 1e-12):
                raise InvalidCharacter(f"chi({a}) must vanish exactly when gcd({a}, {f}) > 1")
        for a in range(1, f + 1):
            for b in range(a, f + 1):
                if abs(self(a * b) - self(a) * self(b)) > 1e-9:
                    raise InvalidCharacter(f"chi is not multiplicative at ({a}, {b})")
        if not self.is_trivial and abs(sum(values)) > 1e-9:
            raise InvalidCharacter("values of a non-trivial character must sum to zero")
        object.__setattr__(self, "primitive", self._is_primitive())

    def __call__(self, n: int) -> complex:
        return self.values[(n - 1) % self.modulus]

    @property
    def is_trivial(self) -> bool:
        return all(
            abs(v - 1) < 1e-12
            for a, v in enumerate(self.values, start=1)
            if math.gcd(a, self.modulus) == 1
        )

    @property
    def is_real(self) -> bool:
        return all(abs(v.imag) < 1e-12 for v in self.values)

    def _is_primitive(self) -> bool:
        f = self.modulus
        for d in range(1, f):
            if f % d:
                continue
            induced = all(
                abs(self(a) - 1) < 1e-12
                for a in range(1, f + 1)
                if math.gcd(a, f) == 1 and a % d == 1 % d
            )
            if induced:
                return False
        return True

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=complex)

    def exact_values(self) -> Tuple[CyclotomicField, List[sympy.Expr]]:
        """
        The values as exact elements of the smallest cyclotomic field holding them

        Raises:
            InvalidCharacter: a value is not a root of unity of order dividing phi(f)
        """
        base = int(sympy.totient(self.modulus))
        exponents: Dict[int, int] = {}
        for a, v in enumerate(self.values, start=1):
            if math.gcd(a, self.modulus) > 1:
                continue
            k = round(cmath.phase(v) * base / (2 * math.pi)) % base
            if abs(v - cmath.exp(2j * math.pi * k / base)) > 1e-9:
                raise InvalidCharacter(f"chi({a}) = {v} is not a root of unity of order dividing {base}")
            exponents[a] = k
        order = 1
        for k in exponents.values():
            order = math.lcm(order, base // math.gcd(k, base))
        field = CyclotomicField(order)
        values = [
            field.power(exponents[a] * order // base) if a in exponents else sympy.Integer(0)
            for a in range(1, self.modulus + 1)
        ]
        return field, values

    @classmethod
    def from_values(cls, values: Sequence[Any]) -> "CharacterTable":
        return cls(modulus=len(values), values=tuple(complex(v) for v in values))

    @classmethod
    def kronecker(cls, discriminant: int) -> "CharacterTable":
        """The real character n -> (D/n) of modulus |D|"""
        f = abs(discriminant)
        return cls(modulus=f, values=tuple(complex(kronecker_symbol(discriminant, a)) for a in range(1, f + 1)))


def _snap(value: complex) -> complex:
    re = round(value.real) if abs(value.real - round(value.real)) < 1e-14 else value.real
    im = round(value.imag) if abs(value.imag - round(value.imag)) < 1e-14 else value.imag
    return complex(re, im)


def character_from_prime_modulus(f: int, order: int = 2, power: int = 1) -> CharacterTable:
    """
    Character mod a prime f sending a primitive root g to exp(2 pi i power/order)

    Raises:
        NotPrime: f is not prime
        TrivialCharacterError: the requested image is trivial (always for f = 2)
    """
    if not sympy.isprime(f):
        raise NotPrime(f"{f} is not prime")
    if (f - 1) % order:
        raise TrivialCharacterError(
            f"no character of order {order} mod {f}" if f > 2 else "no non-trivial character mod 2"
        )
    if power % order == 0:
        raise TrivialCharacterError("generator image 1 gives the trivial character")
    g = primitive_root(f)
    values = [0j] * f
    current = 1
    for j in range(f - 1):
        values[current - 1] = _snap(cmath.exp(2j * math.pi * power * j / order))
        current = current * g % f
    return CharacterTable(modulus=f, values=tuple(values))


# ---------------------------------------------------------------------------
# Model factories
# ---------------------------------------------------------------------------

def from_rational(
    numerator_coeffs: Sequence[int],
    denominator_coeffs: Sequence[int],
    label: Optional[str] = None,
) -> SeriesModel:
    """
    F = p/q from ascending integer coefficient lists

    Raises:
        InvalidRational: q(0) = 0, a_0 != 0, or a pole inside the unit disc
    """
    try:
        num = [int(c) for c in numerator_coeffs]
        den = [int(c) for c in denominator_coeffs]
    except (TypeError, ValueError) as e:
        raise InvalidRational(f"rational coefficients must be integers: {e}") from e
    if not den or den[0] == 0:
        raise InvalidRational("denominator must have a nonzero constant term")
    if num and num[0] != 0:
        raise InvalidRational("expansion must vanish at z = 0 (a_0 = 0)")
    if not any(num):
        raise InvalidRational("numerator is identically zero")

    closed = RationalClosedForm(num, den)
    order = closed.unit_circle_pole_order()
    k = float(max(order - 1, 0))
    rule = _RecurrenceRule(num, den)
    return SeriesModel(
        label=label or f"rational(num={num}, den={den})",
        coefficient_rule=rule,
        bieberbach_order=k,
        bieberbach_constants=(_declared_constant(rule, k), 1),
        closed_form=closed,
        metadata={"type": "rational", "num": num, "den": den},
    )


def zeta_model() -> SeriesModel:
    """F_Q(z) = z/(1 - z), whose L-transform is zeta(s)"""
    return from_rational([0, 1], [1, -1], label="F_Q")


def from_coefficients(values: Sequence[Any], bieberbach_k: float = 0.0, label: Optional[str] = None) -> SeriesModel:
    """Polynomial model with a_1, a_2, ... given explicitly"""
    coeffs = [complex(v) for v in values]
    if not coeffs or all(c == 0 for c in coeffs):
        raise InvalidRational("coefficient list is empty or identically zero")
    table = np.array([0j] + coeffs, dtype=complex)
    degree = len(coeffs)

    def rule(n: np.ndarray) -> np.ndarray:
        n = np.asarray(n, dtype=np.int64)
        out = np.zeros(n.shape, dtype=complex)
        inside = n <= degree
        out[inside] = table[n[inside]]
        return out

    return SeriesModel(
        label=label or f"coeffs({len(coeffs)})",
        coefficient_rule=rule,
        bieberbach_order=float(bieberbach_k),
        bieberbach_constants=(float(max(1.0, np.max(np.abs(table)))), 1),
        closed_form=RationalClosedForm([0] + [_exact(c) for c in coeffs], [1]),
        metadata={"type": "coeffs", "values": coeffs},
    )


def from_character(table: CharacterTable, label: Optional[str] = None) -> SeriesModel:
    """
    F_chi(z) = sum_{a=1}^{f} chi(a) z^a / (1 - z^f)

    Raises:
        TrivialCharacterError: chi is trivial
    """
    if table.is_trivial:
        raise TrivialCharacterError("the trivial character gives zeta times Euler factors, not an L-series")
    f = table.modulus
    values = table.as_array()

    def rule(n: np.ndarray) -> np.ndarray:
        return values[(np.asarray(n, dtype=np.int64) - 1) % f]

    denominator = [1] + [0] * (f - 1) + [-1]
    if table.is_real:
        numerator = [0] + [int(round(v.real)) for v in values]
        closed = RationalClosedForm(numerator, denominator)
    else:
        cyclotomic, exact = table.exact_values()
        closed = RationalClosedForm([sympy.Integer(0)] + exact, denominator, field=cyclotomic)
    return SeriesModel(
        label=label or f"F_chi(mod {f})",
        coefficient_rule=rule,
        bieberbach_order=0.0,
        bieberbach_constants=(1.0, 1),
        closed_form=closed,
        metadata={"type": "character", "modulus": f, "character": table},
    )


def katz_psi(a: int) -> SeriesModel:
    """Psi_a(t) = sum_{n=1}^{a} xi_a(n) t^n / (1 - t^a), xi_a = 1 - a on multiples of a, else 1"""
    if a < 2:
        raise ValueError("katz_psi needs a >= 2")

    def rule(n: np.ndarray) -> np.ndarray:
        n = np.asarray(n, dtype=np.int64)
        return np.where(n % a == 0, 1 - a, 1).astype(complex)

    numerator = [0] + [1] * (a - 1) + [1 - a]
    denominator = [1] + [0] * (a - 1) + [-1]
    return SeriesModel(
        label=f"Psi_{a}",
        coefficient_rule=rule,
        bieberbach_order=0.0,
        bieberbach_constants=(float(a - 1), 1),
        closed_form=RationalClosedForm(numerator, denominator),
        metadata={"type": "katz", "a": a},
    )


def moebius_series(cap: int = DEFAULT_SIEVE_CAP) -> SeriesModel:
    """sum mu(n) z^n, sieved up to ``cap``"""
    rule = _SievedRule(moebius_sieve(cap), "moebius")
    return SeriesModel(
        label="moebius",
        coefficient_rule=rule,
        bieberbach_order=0.0,
        cap=cap,
        metadata={"type": "moebius"},
    )


def prime_indicator_series(cap: int = DEFAULT_SIEVE_CAP) -> SeriesModel:
    """sum over primes p of z^p, sieved up to ``cap``"""
    rule = _SievedRule(prime_sieve(cap).astype(np.int8), "prime-indicator")
    return SeriesModel(
        label="prime-indicator",
        coefficient_rule=rule,
        bieberbach_order=0.0,
        cap=cap,
        metadata={"type": "prime-indicator"},
    )


def dirichlet_factors(discriminant: int) -> Tuple[SeriesModel, SeriesModel]:
    """(F_Q, F_chi_D): their L-transforms multiply to the Dedekind zeta function"""
    return zeta_model(), from_character(CharacterTable.kronecker(discriminant), label=f"F_chi({discriminant})")


def _ideal_count_kernel(
    discriminant: int, h: int, w: int, counts: Callable[[int], np.ndarray]
) -> Callable[[np.ndarray], np.ndarray]:
    """
    sum nu(n) exp(-n x) for x > 0. Below x0 the theta-function expansion
    rho/x - h/w is exact up to exp(-40); above it the series is summed.
    """
    d = abs(discriminant)
    rho = 2 * math.pi * h / (w * math.sqrt(d))
    x0 = 4 * math.pi**2 / (40 * d)
    n_max = int(math.ceil(42 / x0))
    n = np.arange(1, n_max + 1, dtype=float)

    def kernel(x):
        scalar = np.ndim(x) == 0
        xx = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty(xx.shape, dtype=complex)
        small = xx < x0
        out[small] = rho / xx[small] - h / w
        large = np.flatnonzero(~small)
        nu = counts(n_max)[1:n_max + 1].real
        for start in range(0, large.size, 256):
            chunk = large[start:start + 256]
            out[chunk] = np.exp(-np.outer(xx[chunk], n)) @ nu
        return complex(out[0]) if scalar else out

    return kernel


def ideal_count_series(discriminant: int, cap: int = DEFAULT_SIEVE_CAP) -> SeriesModel:
    """
    F_K(z) = sum over ideals of z^{N(a)} for the imaginary quadratic field of
    discriminant D, with nu(n) = sum_{d | n} (D/d)

    Raises:
        UnsupportedField: D is not a negative fundamental discriminant
    """
    if discriminant >= 0 or not is_fundamental_discriminant(discriminant):
        raise UnsupportedField(f"{discriminant} is not a negative fundamental discriminant")
    h = class_number(discriminant)
    w = unit_count(discriminant)
    rule = _GrowingRule(lambda size: ideal_counts(discriminant, size), cap, f"ideal-count({discriminant})")
    rho = 2 * math.pi * h / (w * math.sqrt(abs(discriminant)))
    return SeriesModel(
        label=f"ideal-count({discriminant})",
        coefficient_rule=rule,
        bieberbach_order=1.0,
        bieberbach_constants=(1.0, 1),
        kernel=_ideal_count_kernel(discriminant, h, w, rule.upto),
        abscissa=1.0,
        cap=cap,
        factors=dirichlet_factors(discriminant),
        metadata={
            "type": "ideal-count",
            "discriminant": discriminant,
            "class_number": h,
            "units": w,
            "rho": rho,
        },
    )
