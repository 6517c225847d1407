"""Apéry numbers B(n), the binomial sums C(n, A, B) and Zagier-recurrence solutions."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Union

from .errors import ParameterError
from .padic import binomial_exact, binomial_mod_prime_power, check_prime


@dataclass(frozen=True, order=True)
class SequenceParams:
    """Exponent pair selecting the family ``C(., A, B)``."""

    A: int
    B: int

    def __post_init__(self):
        if not isinstance(self.A, int) or self.A < 1:
            raise ParameterError(f"A must be a positive integer, got {self.A!r}")
        if not isinstance(self.B, int) or self.B < 0:
            raise ParameterError(f"B must be a nonnegative integer, got {self.B!r}")


def as_params(params) -> SequenceParams:
    if isinstance(params, SequenceParams):
        return params
    A, B = params
    return SequenceParams(A, B)


@dataclass(frozen=True)
class ZagierTriple:
    """Parameters of b(n+1)^2 u(n+1) + (a n^2 + a n - lam) u(n) + n^2 u(n-1) = 0."""

    a: Fraction
    b: Fraction
    lam: Fraction

    def __init__(self, a, b, lam):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "lam", Fraction(lam))
        if self.b == 0:
            raise ParameterError("b must be nonzero")


#: The triple reproducing B(n) under the recurrence as written above.
APERY_TRIPLE = ZagierTriple(11, -1, -3)


def _check_index(n):
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ParameterError(f"index must be a nonnegative integer, got {n!r}")


@lru_cache(maxsize=None)
def apery_B(n: int) -> int:
    """B(n) = sum_j binom(n+j, j) binom(n, j)^2 by direct summation."""
    _check_index(n)
    return sum(binomial_exact(n + j, j) * binomial_exact(n, j) ** 2 for j in range(n + 1))


def apery_B_recurrence_check(nmax: int) -> bool:
    """Check (n+1)^2 B(n+1) = (11n^2+11n+3) B(n) + n^2 B(n-1) for 1 <= n < nmax."""
    if nmax < 1:
        raise ParameterError(f"nmax must be positive, got {nmax}")
    for n in range(1, nmax):
        lhs = (n + 1) ** 2 * apery_B(n + 1)
        rhs = (11 * n * n + 11 * n + 3) * apery_B(n) + n * n * apery_B(n - 1)
        if lhs != rhs:
            return False
    return True


def apery_B_mod(n: int, p: int, K: int) -> int:
    _check_index(n)
    mod = p**K
    total = 0
    for j in range(n + 1):
        t = binomial_mod_prime_power(n + j, j, p, K) * binomial_mod_prime_power(n, j, p, K) ** 2
        total = (total + t) % mod
    return total


class _CentralBinomials:
    """binom(2k, k) for k < len, shared by every (A, B) family."""

    def __init__(self):
        self._values = [1]
        self._lock = threading.Lock()

    def upto(self, n: int) -> list[int]:
        if len(self._values) <= n:
            with self._lock:
                vals = self._values
                for k in range(len(vals), n + 1):
                    # binom(2k, k) = binom(2k-2, k-1) * 2(2k-1)/k
                    vals.append(vals[-1] * 2 * (2 * k - 1) // k)
        return self._values


central_binomials = _CentralBinomials()


def C(n: int, params) -> int:
    """C(n, A, B) = sum_{k=0}^{n} binom(n, k)^A binom(2k, k)^B.

    >>> C(2, SequenceParams(2, 1))
    15
    """
    _check_index(n)
    params = as_params(params)
    A, B = params.A, params.B
    cb = central_binomials.upto(n)
    total = 0
    row = 1  # binom(n, k), updated incrementally
    for k in range(n + 1):
        total += row**A * cb[k] ** B
        row = row * (n - k) // (k + 1)
    return total


def C_mod(n: int, params, p: int, K: int) -> int:
    """C(n, A, B) mod p**K through the prime-power binomial kernel."""
    _check_index(n)
    check_prime(p)
    params = as_params(params)
    mod = p**K
    total = 0
    for k in range(n + 1):
        a = binomial_mod_prime_power(n, k, p, K)
        if a == 0:
            continue
        b = binomial_mod_prime_power(2 * k, k, p, K)
        total = (total + pow(a, params.A, mod) * pow(b, params.B, mod)) % mod
    return total


def zagier_terms(triple: ZagierTriple, nmax: int) -> list[Fraction]:
    """u(0), ..., u(nmax) by the forward recurrence from u(0) = 1."""
    _check_index(nmax)
    a, b, lam = triple.a, triple.b, triple.lam
    u = [Fraction(1)]
    prev = Fraction(0)
    for n in range(nmax):
        nxt = -((a * n * n + a * n - lam) * u[n] + n * n * prev) / (b * (n + 1) ** 2)
        prev = u[n]
        u.append(nxt)
    return u


def zagier_u(triple: ZagierTriple, n: int) -> Fraction:
    return zagier_terms(triple, n)[n]


def zagier_integrality_scan(triple: ZagierTriple, nmax: int) -> Optional[int]:
    """Smallest n <= nmax with u(n) not an integer, or None if all are integral."""
    for n, value in enumerate(zagier_terms(triple, nmax)):
        if value.denominator != 1:
            return n
    return None


Index = Union[int, Fraction]


def at_boundary_index(func: Callable[[int], int], index: Index) -> tuple[int, bool]:
    """Evaluate ``func`` at ``index`` under the zero convention.

    Negative or non-integral indices give 0; the second element reports
    whether the convention fired.
    """
    index = Fraction(index)
    if index.denominator != 1 or index < 0:
        return 0, True
    return func(int(index)), False
