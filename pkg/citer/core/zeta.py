"""
Zeta suite - the Riemann zeta function, completed Z(s), Dirichlet L-series,
Hurwitz and multiple zeta values, polylogarithms and the Dedekind transform,
all evaluated as complex iterated integrals
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from ..utils.config import QuadratureConfig
from .errors import ConvergenceConstraint, SpecError
from .iterated import (
    branch_power,
    gap_transform_integral,
    hurwitz_kernel,
    multiple_iterated_integral,
    polylog_integral,
    power_iterated_integral,
)
from .numerics import DEFAULT_QUADRATURE, Estimate, gamma, principal_power, quad_halfline, rgamma
from .paths import Path
from .series import (
    DEFAULT_SIEVE_CAP,
    CharacterTable,
    SeriesModel,
    from_character,
    ideal_count_series,
    zeta_model,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=1)
def riemann_model() -> SeriesModel:
    """Shared F_Q = z/(1-z)"""
    return zeta_model()


def _fmt(value: complex) -> str:
    value = complex(value)
    return f"{value.real:g}" if value.imag == 0 else f"{value.real:g}{value.imag:+g}i"


def _single(s_tuple: Sequence[complex], kind: str) -> complex:
    if len(s_tuple) != 1:
        raise SpecError(f"{kind} takes a single exponent, got {len(s_tuple)}")
    return complex(s_tuple[0])


def zeta(s: complex, cfg: Optional[QuadratureConfig] = None) -> Estimate:
    """zeta(s) = int_{[0,1]} dz/(1-z) (dz/z)^{s-1}, Re(s) > 1"""
    return power_iterated_integral(riemann_model(), s, cfg=cfg)


def completed_Z_routes(s: complex, cfg: Optional[QuadratureConfig] = None) -> Tuple[Estimate, Estimate]:
    """
    Z(s) = pi^{-s/2} Gamma(s/2) zeta(s) two ways:

    1. the iterated integral in the duplicated variable,
       (1/Gamma((s+1)/2)) int_0^oo (x^2/(4 pi))^{(s-1)/2} dx/(e^x - 1)
    2. the product pi^{-s/2} Gamma(s/2) times the integral for zeta(s)

    The two agree through Legendre's duplication formula.
    """
    cfg = cfg or DEFAULT_QUADRATURE
    s = complex(s)
    if s.real <= 1:
        raise ConvergenceConstraint(f"completed Z(s) by integration needs Re(s) > 1, got s={_fmt(s)}")
    model = riemann_model()
    half = (s - 1.0) / 2.0

    def integrand(x):
        return branch_power(x * x / (4.0 * math.pi), half) * model.exponential(x)

    raw = quad_halfline(integrand, cfg)
    norm = rgamma((s + 1.0) / 2.0)
    duplicated = Estimate(norm * complex(raw), abs(norm) * raw.error)

    z = zeta(s, cfg)
    factor = principal_power(math.pi, -s / 2.0) * gamma(s / 2.0)
    product = Estimate(factor * complex(z), abs(factor) * z.error)
    return duplicated, product


def completed_Z(s: complex, cfg: Optional[QuadratureConfig] = None) -> Estimate:
    """Z(s) by the duplicated-variable iterated integral"""
    return completed_Z_routes(s, cfg)[0]


def dirichlet_L(s: complex, table: CharacterTable, cfg: Optional[QuadratureConfig] = None) -> Estimate:
    """L(s, chi) = int sum_a chi(a) z^a/(1 - z^f) (dz/z)^s, Re(s) > 1"""
    return power_iterated_integral(from_character(table), s, cfg=cfg)


def dirichlet_L_gap(
    s: complex, table: CharacterTable, k: int = 2, cfg: Optional[QuadratureConfig] = None
) -> Estimate:
    """L(s, chi) through the k-gap series sum_a chi(a) sum_n z^{(a + n f)^k}"""
    return gap_transform_integral(from_character(table), k, s, cfg)


def mzv(s_tuple: Sequence[complex], cfg: Optional[QuadratureConfig] = None) -> Estimate:
    """
    zeta(s1, s2) = sum_{n1 > n2 >= 1} n1^{-s1} n2^{-s2}; depth one is zeta(s)

    Raises:
        DepthUnsupported: more than two exponents
        ConvergenceConstraint: Re(s1) <= 1 or Re(s1 + s2) <= 2
    """
    s_tuple = tuple(complex(v) for v in s_tuple)
    if not s_tuple:
        raise SpecError("multiple zeta value needs at least one exponent")
    model = riemann_model()
    return multiple_iterated_integral([model] * len(s_tuple), s_tuple, cfg)


def hurwitz_mzv(
    s_tuple: Sequence[complex], z: complex, cfg: Optional[QuadratureConfig] = None
) -> Estimate:
    """
    sum_{n1 > n2 >= 0} (n1 + z)^{-s1} (n2 + z)^{-s2}; depth one is the
    Hurwitz zeta function and z = 1 gives back the multiple zeta value
    """
    s_tuple = tuple(complex(v) for v in s_tuple)
    if not s_tuple:
        raise SpecError("Hurwitz multiple zeta value needs at least one exponent")
    shifted = hurwitz_kernel(z)
    if len(s_tuple) == 1:
        return multiple_iterated_integral([shifted], s_tuple, cfg)
    slots = [riemann_model()] * (len(s_tuple) - 1) + [shifted]
    return multiple_iterated_integral(slots, s_tuple, cfg)


def hurwitz_zeta(s: complex, z: complex, cfg: Optional[QuadratureConfig] = None) -> Estimate:
    return hurwitz_mzv((s,), z, cfg)


def polylog(
    s: complex, w: complex, path: Optional[Path] = None, cfg: Optional[QuadratureConfig] = None
) -> Estimate:
    """Li_s(w) along the straight path from 0, or along ``path``"""
    return polylog_integral(s, w, path, cfg)


def dedekind_zeta_transform(
    discriminant: int,
    s: complex,
    cfg: Optional[QuadratureConfig] = None,
    cap: int = DEFAULT_SIEVE_CAP,
) -> Estimate:
    """L-transform of the ideal-count series of Q(sqrt(D)), i.e. zeta_K(s)"""
    return power_iterated_integral(ideal_count_series(discriminant, cap=cap), s, cfg=cfg)


class ZetaKind(str, Enum):
    """Special functions served by the zeta suite"""
    RIEMANN = "riemann"
    COMPLETED = "completed"
    DIRICHLET = "dirichlet"
    HURWITZ = "hurwitz"
    MZV = "mzv"
    POLYLOG = "polylog"
    DEDEKIND = "dedekind"


@dataclass(frozen=True)
class ZetaRequest:
    """One special-function evaluation with its parameters"""

    kind: ZetaKind
    s_tuple: Tuple[complex, ...]
    character: Optional[CharacterTable] = None
    z: Optional[complex] = None
    w: Optional[complex] = None
    discriminant: Optional[int] = None
    path: Optional[Path] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ZetaKind(self.kind))
        object.__setattr__(self, "s_tuple", tuple(complex(v) for v in self.s_tuple))
        if not self.s_tuple:
            raise SpecError("at least one exponent is required")
        if self.kind == ZetaKind.DIRICHLET and self.character is None:
            raise SpecError("dirichlet needs a character")
        if self.kind == ZetaKind.HURWITZ and self.z is None:
            raise SpecError("hurwitz needs the shift z")
        if self.kind == ZetaKind.POLYLOG and self.w is None:
            raise SpecError("polylog needs the point w")
        if self.kind == ZetaKind.DEDEKIND and self.discriminant is None:
            raise SpecError("dedekind needs a discriminant")

    def evaluate(self, cfg: Optional[QuadratureConfig] = None) -> Estimate:
        kind = self.kind.value
        logger.debug("evaluating %s at %s", kind, self.s_tuple)
        if self.kind == ZetaKind.RIEMANN:
            return zeta(_single(self.s_tuple, kind), cfg)
        if self.kind == ZetaKind.COMPLETED:
            return completed_Z(_single(self.s_tuple, kind), cfg)
        if self.kind == ZetaKind.DIRICHLET:
            return dirichlet_L(_single(self.s_tuple, kind), self.character, cfg)
        if self.kind == ZetaKind.HURWITZ:
            return hurwitz_mzv(self.s_tuple, self.z, cfg)
        if self.kind == ZetaKind.MZV:
            return mzv(self.s_tuple, cfg)
        if self.kind == ZetaKind.POLYLOG:
            return polylog(_single(self.s_tuple, kind), self.w, self.path, cfg)
        return dedekind_zeta_transform(self.discriminant, _single(self.s_tuple, kind), cfg)


def dirichlet_series_oracle(coefficients: np.ndarray, s: complex) -> complex:
    """Plain partial sum sum_{n>=1} a_n n^{-s} of a coefficient array a_0..a_N"""
    n = np.arange(1, len(coefficients), dtype=float)
    return complex(np.sum(coefficients[1:] * np.exp(-complex(s) * np.log(n))))
