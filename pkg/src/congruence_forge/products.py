"""The products g_AB(X, k), g*_AB(X, k) and partial harmonic sums S_j(k).

These control the binomial sums factor by factor: ``binom(n, k)`` is a
signed multiple of ``g_10(n, k)``, and splitting off the indices divisible
by ``p`` leaves ``g*`` whose low-order Taylor coefficients are the sums
``S_1`` and ``S_2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError, ParameterError
from .padic import binomial_exact, check_prime, vp
from .witness import CongruenceWitness, Statement


def _check_k(k):
    if not isinstance(k, int) or k < 0:
        raise ParameterError(f"k must be a nonnegative integer, got {k!r}")


def _check_exponents(A, B):
    if A < 0 or B < 0:
        raise ParameterError("exponents A, B must be nonnegative")


def _product(A: int, B: int, X: int, indices) -> Fraction:
    # prod over i of (i - X)^A (i + X)^B / i^(A+B), reduced once at the end
    num = den = 1
    for i in indices:
        num *= (i - X) ** A * (i + X) ** B
        if not num:
            return Fraction(0)
        den *= i ** (A + B)
    return Fraction(num, den)


def g(A: int, B: int, X: int, k: int) -> Fraction:
    """prod_{i=1}^{k} (1 - X/i)^A (1 + X/i)^B."""
    _check_exponents(A, B)
    _check_k(k)
    return _product(A, B, X, range(1, k + 1))


def g_star(A: int, B: int, p: int, X: int, k: int) -> Fraction:
    """As :func:`g`, skipping the indices divisible by ``p``."""
    _check_exponents(A, B)
    _check_k(k)
    check_prime(p)
    return _product(A, B, X, (i for i in range(1, k + 1) if i % p))


def S(j: int, p: int, k: int) -> Fraction:
    """sum_{i<=k, p does not divide i} 1/i^j."""
    if j < 1:
        raise ParameterError(f"j must be positive, got {j}")
    _check_k(k)
    check_prime(p)
    return sum((Fraction(1, i**j) for i in range(1, k + 1) if i % p), Fraction(0))


def _poly_mul(a: list, b: list, degree: Optional[int]) -> list:
    n = len(a) + len(b) - 1
    if degree is not None:
        n = min(n, degree + 1)
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        if not x or i >= n:
            continue
        for j, y in enumerate(b[: n - i]):
            out[i + j] += x * y
    return out


def g_star_poly(A: int, B: int, p: int, k: int, degree: Optional[int] = None) -> list[Fraction]:
    """Coefficients of g*_AB(X, k) as a polynomial in a formal X.

    With ``degree`` set, the expansion is truncated after ``X**degree``;
    the retained coefficients are exact.
    """
    _check_exponents(A, B)
    _check_k(k)
    check_prime(p)
    poly = [Fraction(1)]
    for i in range(1, k + 1):
        if i % p == 0:
            continue
        for _ in range(A):
            poly = _poly_mul(poly, [Fraction(1), Fraction(-1, i)], degree)
        for _ in range(B):
            poly = _poly_mul(poly, [Fraction(1), Fraction(1, i)], degree)
    return poly


def prop1_check(n: int, k: int, A: int, B: int) -> bool:
    """binom(n,k)^A binom(n+k,k)^B == (-1)^(Ak) (n/(n-k))^A g_AB(n, k)."""
    if n < 0 or k < 0:
        raise ParameterError("n and k must be nonnegative")
    if n == k:
        raise DomainError("n == k is a pole of n/(n-k)")
    lhs = binomial_exact(n, k) ** A * binomial_exact(n + k, k) ** B
    rhs = (-1) ** (A * k) * Fraction(n, n - k) ** A * g(A, B, n, k)
    return lhs == rhs


def prop2_check(A: int, B: int, p: int, X: int, k: int) -> bool:
    """g_AB(pX, k) == g*_AB(pX, k) g_AB(X, floor(k/p))."""
    return g(A, B, p * X, k) == g_star(A, B, p, p * X, k) * g(A, B, X, k // p)


def prop3_coefficients(A: int, B: int, p: int, k: int) -> tuple[Fraction, Fraction, Fraction]:
    """The claimed X^0, X^1, X^2 coefficients of g*_AB(X, k)."""
    s1, s2 = S(1, p, k), S(2, p, k)
    return (Fraction(1), (B - A) * s1, Fraction((A - B) ** 2 * s1 * s1 - (A + B) * s2) / 2)


def prop3_check(A: int, B: int, p: int, k: int) -> bool:
    """Compare the low coefficients of g*_AB(X, k) with the S_1, S_2 formula."""
    poly = g_star_poly(A, B, p, k, degree=2)
    poly += [Fraction(0)] * (3 - len(poly))
    return tuple(poly[:3]) == prop3_coefficients(A, B, p, k)


@dataclass(frozen=True)
class Prop4Result:
    valuation: object
    required: int
    passed: bool
    # only for j == 1: whether vp(S_1(m p^r)) >= 2r, which Lemma 2.2 relies on
    strong_passed: Optional[bool]


def prop4_check(j: int, p: int, m: int, r: int) -> Prop4Result:
    """Valuation of S_j(m p^r) against the bound r (and 2r when j = 1)."""
    check_prime(p)
    if j < 1 or m < 1 or r < 1:
        raise ParameterError("j, m, r must be positive")
    if j % (p - 1) == 0:
        raise ParameterError(f"j = {j} is divisible by p - 1 = {p - 1}")
    v = vp(S(j, p, m * p**r), p)
    strong = (v >= 2 * r) if j == 1 else None
    return Prop4Result(v, r, v >= r, strong)


def lemma_reduce_check(p: int, m: int, r: int) -> CongruenceWitness:
    """binom(2mp^r, mp^r) against binom(2mp^(r-1), mp^(r-1)) modulo p^(3r)."""
    check_prime(p)
    if p <= 3:
        raise ParameterError("the reduction lemma needs p > 3")
    if m < 0 or r < 1:
        raise ParameterError("need m >= 0 and r >= 1")
    n1, n0 = m * p**r, m * p ** (r - 1)
    lhs, rhs = binomial_exact(2 * n1, n1), binomial_exact(2 * n0, n0)
    v = vp(lhs - rhs, p)
    return CongruenceWitness(Statement.LEMMA_REDUCE, p, m, r, None, None, lhs, rhs,
                             3 * r, v, v >= 3 * r)


def lemma_proof_identity_check(p: int, m: int, r: int, k: int) -> bool:
    """binom(mp^r, k) == binom(mp^(r-1), k/p) g*_10(mp^r, k) for p | k.

    The sign (-1)^(k - k/p) dropped by this factorization is +1 for odd p,
    so p = 2 is rejected.
    """
    check_prime(p)
    if p == 2:
        raise ParameterError("the factorization is unsigned only for odd p")
    if k % p:
        raise ParameterError(f"{p} does not divide k = {k}")
    if m < 0 or r < 1 or not 0 <= k <= m * p**r:
        raise ParameterError("need m >= 0, r >= 1 and 0 <= k <= m p^r")
    lhs = binomial_exact(m * p**r, k)
    return lhs == binomial_exact(m * p ** (r - 1), k // p) * g_star(1, 0, p, m * p**r, k)
