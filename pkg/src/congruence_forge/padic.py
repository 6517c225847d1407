"""Exact rationals, p-adic valuations and binomial kernels modulo prime powers.

Rationals are :class:`fractions.Fraction`, which is always kept in lowest
terms with a positive denominator.  The valuation of zero is ``math.inf``.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import NamedTuple, Union

from .errors import DomainError, ParameterError

ExactRational = Fraction
Rational = Union[int, Fraction]

INF = math.inf

#: Largest modulus p**K accepted by the residue kernels, in bits.
MAX_RESIDUE_BITS = 256


def is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


def check_prime(p) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
        raise ParameterError(f"{p!r} is not a prime")
    return p


def _vp_int(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    # strip p**(2**i) chunks first so huge powers of p cost O(log v) divisions
    q = p
    chunks = []
    while n % q == 0:
        chunks.append(q)
        q *= q
    for i in range(len(chunks) - 1, -1, -1):
        if n % chunks[i] == 0:
            n //= chunks[i]
            v += 1 << i
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x: Rational, p: int):
    """Return the p-adic valuation of ``x``; ``math.inf`` when ``x == 0``.

    >>> vp(250, 5), vp(Fraction(25, 12), 5)
    (3, 2)
    """
    check_prime(p)
    x = Fraction(x)
    if x == 0:
        return INF
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


class Congruence(NamedTuple):
    holds: bool
    attained: object  # int or math.inf

    def __bool__(self):
        return self.holds


def congruent_mod_pk(a: Rational, b: Rational, p: int, K: int) -> Congruence:
    """Test ``a ≡ b (mod p**K)`` and report ``vp(a - b)``.

    Both arguments must be p-integral; otherwise the congruence is undefined
    and :class:`DomainError` is raised.
    """
    check_prime(p)
    if K < 0:
        raise ParameterError(f"K must be nonnegative, got {K}")
    a, b = Fraction(a), Fraction(b)
    for x in (a, b):
        if x.denominator % p == 0:
            raise DomainError(f"{x} is not {p}-integral")
    v = vp(a - b, p)
    return Congruence(v >= K, v)


def factorial_valuation(n: int, p: int) -> int:
    """Legendre's formula for ``vp(n!)``."""
    check_prime(p)
    if n < 0:
        raise ParameterError(f"n must be nonnegative, got {n}")
    total = 0
    while n:
        n //= p
        total += n
    return total


def binomial_exact(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


# Prefix products of the p-units below p**K, grown on demand.  Each list is
# only ever appended to under the lock, so readers see a consistent prefix.
_unit_tables: dict[tuple[int, int], list[int]] = {}
_table_lock = threading.Lock()


def _unit_prefix(p: int, K: int, upto: int) -> list[int]:
    key = (p, K)
    table = _unit_tables.get(key)
    if table is not None and len(table) > upto:
        return table
    with _table_lock:
        table = _unit_tables.setdefault(key, [1])
        mod = p**K
        acc = table[-1]
        for i in range(len(table), upto + 1):
            if i % p:
                acc = acc * i % mod
            table.append(acc)
    return table


def _wilson_sign(p: int, K: int) -> int:
    # product of all units of Z/p^K Z
    if p == 2 and K >= 3:
        return 1
    return -1


def _pfree_factorial(n: int, p: int, K: int) -> int:
    """``n! / p**vp(n!)`` reduced mod ``p**K``."""
    mod = p**K
    sign = _wilson_sign(p, K)
    result = 1
    while n > 1:
        q, rem = divmod(n, mod)
        table = _unit_prefix(p, K, rem)
        if sign == -1 and q % 2:
            result = -result
        result = result * table[rem] % mod
        n //= p
    return result % mod


def binomial_mod_prime_power(n: int, k: int, p: int, K: int) -> int:
    """``binom(n, k) mod p**K`` without forming the binomial.

    Splits each factorial into its p-power (Legendre) and its p-free part,
    which is a product of units computed block-wise via the generalized
    Wilson theorem.

    >>> binomial_mod_prime_power(25, 5, 5, 3)
    5
    """
    check_prime(p)
    if K < 1:
        raise ParameterError(f"K must be positive, got {K}")
    if n < 0:
        raise ParameterError(f"n must be nonnegative, got {n}")
    mod = p**K
    if mod.bit_length() > MAX_RESIDUE_BITS:
        raise ParameterError(f"p**K exceeds the {MAX_RESIDUE_BITS}-bit residue width")
    if k < 0 or k > n:
        return 0
    e = factorial_valuation(n, p) - factorial_valuation(k, p) - factorial_valuation(n - k, p)
    if e >= K:
        return 0
    num = _pfree_factorial(n, p, K)
    den = _pfree_factorial(k, p, K) * _pfree_factorial(n - k, p, K) % mod
    return num * pow(den, -1, mod) * p**e % mod
