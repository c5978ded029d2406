"""
Arithmetic helpers: sieves, Kronecker symbols and imaginary quadratic fields
"""

import logging
import math
from typing import List, Tuple

import numpy as np
import sympy
from sympy.ntheory import factorint, jacobi_symbol

from .errors import UnsupportedField

logger = logging.getLogger(__name__)


def prime_sieve(cap: int) -> np.ndarray:
    """Boolean array ``is_prime[0..cap]``"""
    is_prime = np.ones(cap + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, int(math.isqrt(cap)) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return is_prime


def moebius_sieve(cap: int) -> np.ndarray:
    """Moebius function mu[0..cap] (mu[0] = 0)"""
    mu = np.ones(cap + 1, dtype=np.int8)
    mu[0] = 0
    is_prime = prime_sieve(cap)
    for p in np.flatnonzero(is_prime):
        mu[p::p] *= -1
        square = int(p) * int(p)
        if square <= cap:
            mu[square::square] = 0
    return mu


def kronecker_symbol(d: int, n: int) -> int:
    """Kronecker symbol (d/n) for n >= 1"""
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * jacobi_symbol(d % n, n)


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(abs(n)).values())


def is_fundamental_discriminant(d: int) -> bool:
    """True for discriminants of quadratic fields"""
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def reduced_forms(d: int) -> List[Tuple[int, int, int]]:
    """Reduced positive definite binary quadratic forms (a, b, c) of discriminant d < 0"""
    if d >= 0:
        raise UnsupportedField(f"discriminant {d} is not negative")
    forms = []
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            numerator = b * b - d
            if numerator % (4 * a):
                continue
            c = numerator // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            if math.gcd(math.gcd(a, abs(b)), c) != 1:
                continue
            forms.append((a, b, c))
        a += 1
    return forms


def class_number(d: int) -> int:
    """Class number h(d) of the imaginary quadratic field of discriminant d"""
    return len(reduced_forms(d))


def unit_count(d: int) -> int:
    """Number of roots of unity w(d) in the imaginary quadratic field of discriminant d"""
    return {-3: 6, -4: 4}.get(d, 2)


def kronecker_table(d: int) -> np.ndarray:
    """(d/r) for r = 0..|d|-1; periodic in r for fundamental d"""
    period = abs(d)
    return np.array([kronecker_symbol(d, r if r else period) for r in range(period)], dtype=np.int64)


def ideal_counts(d: int, cap: int) -> np.ndarray:
    """nu[0..cap] with nu(n) = sum over divisors e of n of (d/e)"""
    table = kronecker_table(d)
    period = abs(d)
    nu = np.zeros(cap + 1, dtype=np.int64)
    for divisor in range(1, cap + 1):
        chi = table[divisor % period]
        if chi:
            nu[divisor::divisor] += chi
    return nu


def primitive_root(p: int) -> int:
    return int(sympy.primitive_root(p))
