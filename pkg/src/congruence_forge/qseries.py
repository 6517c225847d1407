"""Truncated formal q-series: eta quotients, Eisenstein series, composition.

A :class:`PowerSeries` stands for ``q**offset * sum(c[i] q**i, i < order)``
with exact rational coefficients.  Everything is formal in q; nothing is
ever evaluated numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import DomainError, ParameterError, SeriesRangeError
from .sequences import C, SequenceParams


class PowerSeries:
    """Immutable truncated Laurent series in q."""

    __slots__ = ("offset", "coeffs")

    def __init__(self, coeffs: Iterable, offset: int = 0):
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        self.offset = offset

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def precision(self) -> int:
        """Exponents below this are known exactly."""
        return self.offset + self.order

    @classmethod
    def constant(cls, c, N: int) -> "PowerSeries":
        return cls([c] + [0] * (N - 1))

    @classmethod
    def q(cls, N: int) -> "PowerSeries":
        return cls([1] + [0] * (N - 2), offset=1)

    def __repr__(self):
        return f"PowerSeries(offset={self.offset}, coeffs={[str(c) for c in self.coeffs]})"

    def __getitem__(self, n: int) -> Fraction:
        """Coefficient of q**n (absolute exponent)."""
        if n >= self.precision:
            raise SeriesRangeError(f"q^{n} lies beyond the truncation q^{self.precision - 1}")
        i = n - self.offset
        return self.coeffs[i] if i >= 0 else Fraction(0)

    def coefficients(self, N: int) -> list[Fraction]:
        """Coefficients of q^0 .. q^(N-1)."""
        return [self[n] for n in range(N)]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> Optional[int]:
        for i, c in enumerate(self.coeffs):
            if c:
                return self.offset + i
        return None

    def normalized(self) -> "PowerSeries":
        """Shift leading zeros into the offset (keeps the precision)."""
        v = self.valuation()
        if v is None or v == self.offset:
            return self
        return PowerSeries(self.coeffs[v - self.offset:], offset=v)

    def truncate(self, precision: int) -> "PowerSeries":
        n = max(0, min(self.order, precision - self.offset))
        return PowerSeries(self.coeffs[:n], self.offset)

    def _aligned(self, other):
        prec = min(self.precision, other.precision)
        off = min(self.offset, other.offset)
        return off, prec

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            other = PowerSeries.constant(other, self.precision)
        off, prec = self._aligned(other)
        return PowerSeries([self[n] + other[n] for n in range(off, prec)], off)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.offset)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            c = Fraction(other)
            return PowerSeries([c * x for x in self.coeffs], self.offset)
        a, b = self.normalized(), other.normalized()
        n = min(a.order, b.order)
        out = [Fraction(0)] * n
        for i, x in enumerate(a.coeffs[:n]):
            if x:
                for j, y in enumerate(b.coeffs[: n - i]):
                    out[i + j] += x * y
        return PowerSeries(out, a.offset + b.offset)

    __rmul__ = __mul__

    def inverse(self) -> "PowerSeries":
        a = self.normalized()
        if a.is_zero() or not a.coeffs:
            raise DomainError("cannot invert a series with no nonzero known coefficient")
        c0 = a.coeffs[0]
        inv = [Fraction(1) / c0]
        for n in range(1, a.order):
            s = sum(a.coeffs[i] * inv[n - i] for i in range(1, n + 1))
            inv.append(-s / c0)
        return PowerSeries(inv, -a.offset)

    def __truediv__(self, other):
        if not isinstance(other, PowerSeries):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = PowerSeries.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self) -> "PowerSeries":
        """d/dq, term by term."""
        return PowerSeries([(self.offset + i) * c for i, c in enumerate(self.coeffs)],
                           self.offset - 1).normalized()

    def substitute_power(self, d: int) -> "PowerSeries":
        """The series in q**d, i.e. f(dz) for a q-expansion f(z)."""
        if d < 1:
            raise ParameterError("multiplier must be positive")
        if not self.coeffs:
            return PowerSeries([], self.offset * d)
        out = [Fraction(0)] * (d * (self.order - 1) + 1)
        for i, c in enumerate(self.coeffs):
            out[d * i] = c
        return PowerSeries(out, self.offset * d)

    def agrees_with(self, other: "PowerSeries") -> bool:
        off, prec = self._aligned(other)
        return all(self[n] == other[n] for n in range(off, prec))

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.precision == other.precision and self.agrees_with(other)

    def __hash__(self):
        return hash((self.precision, tuple(self[n] for n in range(self.offset, self.precision))))


@dataclass(frozen=True)
class EtaQuotient:
    """prod eta(d z)^e over the (d, e) factors."""

    factors: tuple = ()

    def __init__(self, factors: Iterable = ()):
        fs = []
        for d, e in factors:
            if d < 1:
                raise ParameterError(f"eta multiplier must be positive, got {d}")
            fs.append((int(d), int(e)))
        object.__setattr__(self, "factors", tuple(fs))

    @classmethod
    def parse(cls, text: str) -> "EtaQuotient":
        """Parse ``"d:e,d:e,..."``, e.g. ``"4:6"`` for eta(4z)^6."""
        text = text.strip()
        if not text:
            return cls()
        try:
            pairs = [tuple(int(x) for x in part.split(":")) for part in text.split(",")]
            return cls(pairs)
        except ValueError:
            raise ParameterError(f"malformed eta quotient {text!r}; expected d:e,d:e") from None

    @property
    def q_offset(self) -> Fraction:
        return Fraction(sum(d * e for d, e in self.factors), 24)


def eta_quotient_expand(quot: EtaQuotient, N: int) -> PowerSeries:
    """Expand through q^(N-1); the q^(1/24) factors must combine to an integer power."""
    off = quot.q_offset
    if off.denominator != 1:
        raise ParameterError(f"eta quotient has fractional q-power {off}")
    off = int(off)
    n = max(N - off, 0)
    s = [1] + [0] * (n - 1) if n else []
    for d, e in quot.factors:
        for step in range(d, n, d):
            # multiply by (1 - q^step)^e; for negative e by 1/(1 - q^step)
            for _ in range(abs(e)):
                if e > 0:
                    for i in range(n - 1, step - 1, -1):
                        s[i] -= s[i - step]
                else:
                    for i in range(step, n):
                        s[i] += s[i - step]
    return PowerSeries(s, off)


ETA6_4Z = EtaQuotient([(4, 6)])

#: Default truncation for the shared a(n) table.
DEFAULT_ETA_ORDER = 256


@lru_cache(maxsize=None)
def eta6_4z_table(N: int = DEFAULT_ETA_ORDER) -> tuple[int, ...]:
    """a(0), ..., a(N-1) for eta^6(4z) = sum a(n) q^n."""
    series = eta_quotient_expand(ETA6_4Z, N)
    return tuple(int(c) for c in series.coefficients(N))


def eta6_4z_coefficient(n: int, N: int = DEFAULT_ETA_ORDER) -> int:
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    if n >= N:
        raise SeriesRangeError(f"a({n}) needs an expansion of order > {n}; have {N}")
    return eta6_4z_table(N)[n]


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character tabulated on residues 0 .. modulus-1."""

    modulus: int
    values: tuple
    name: str = ""

    def __post_init__(self):
        q = self.modulus
        if q < 1 or len(self.values) != q:
            raise ParameterError("need one value per residue class")
        for a in range(q):
            if (gcd(a, q) > 1) != (self.values[a] == 0):
                raise ParameterError(f"chi({a}) must vanish exactly when gcd({a}, {q}) > 1")
            for b in range(q):
                if self.values[a * b % q] != self.values[a] * self.values[b]:
                    raise ParameterError("character is not completely multiplicative")

    def __call__(self, n: int) -> int:
        return self.values[n % self.modulus]

    def __str__(self):
        return self.name or f"chi mod {self.modulus}"

    @classmethod
    def trivial(cls) -> "DirichletCharacter":
        return cls(1, (1,), "trivial")

    @classmethod
    def principal(cls, q: int) -> "DirichletCharacter":
        return cls(q, tuple(1 if gcd(a, q) == 1 else 0 for a in range(q)), f"principal-{q}")

    @classmethod
    def chi_minus3(cls) -> "DirichletCharacter":
        return cls(3, (0, 1, -1), "chi-3")

    @classmethod
    def from_name(cls, name: str) -> "DirichletCharacter":
        name = name.strip().lower()
        if name in ("trivial", "1"):
            return cls.trivial()
        if name in ("chi-3", "chi_-3", "chi_minus3", "-3"):
            return cls.chi_minus3()
        if name.startswith("principal-"):
            try:
                return cls.principal(int(name.split("-", 1)[1]))
            except ValueError:
                pass
        raise ParameterError(f"unknown character {name!r}")


def sigma_chi(n: int, chi: DirichletCharacter, power: int) -> int:
    """sum_{d | n} chi(d) d^power."""
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += chi(d) * d**power
            e = n // d
            if e != d:
                total += chi(e) * e**power
        d += 1
    return total


def eisenstein_series(chi: DirichletCharacter, weight: int, constant, N: int) -> PowerSeries:
    """constant + sum_{n>=1} sigma_chi(n) q^n with divisor power weight - 1."""
    if N < 1:
        raise ParameterError("N must be positive")
    return PowerSeries([constant] + [sigma_chi(n, chi, weight - 1) for n in range(1, N)])


@dataclass(frozen=True)
class EigenformSpec:
    """A normalized non-cuspidal eigenform of weight k with character chi."""

    weight: int
    character: DirichletCharacter = field(default_factory=DirichletCharacter.trivial)
    level: int = 1
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        if self.weight < 1:
            raise ParameterError(f"weight must be positive, got {self.weight}")

    def gamma(self, n: int) -> int:
        if n == 0:
            return self.constant
        return sigma_chi(n, self.character, self.weight - 1)


def eigenform_coefficients(spec: EigenformSpec, N: int) -> list:
    """gamma(0), ..., gamma(N-1) with gamma(n) = sum_{d|n} chi(d) d^(k-1)."""
    return [spec.gamma(n) for n in range(N)]


def compose(outer: Sequence, inner: PowerSeries, N: int) -> PowerSeries:
    """sum_n outer[n] * inner^n through q^(N-1), by Horner's rule.

    Missing outer coefficients count as zero.
    """
    if N < 1:
        raise ParameterError("N must be positive")
    u0 = Fraction(outer[0]) if len(outer) else Fraction(0)
    if inner.is_zero():
        return PowerSeries.constant(u0, N)
    inner = inner.normalized()
    if inner.offset < 1:
        raise DomainError("inner series must have positive q-valuation")
    inner = inner.truncate(N)
    top = min(len(outer), N) - 1
    acc = PowerSeries.constant(outer[top] if top >= 0 else 0, N)
    for n in range(top - 1, -1, -1):
        acc = (acc * inner).truncate(N) + PowerSeries.constant(outer[n], N)
    return PowerSeries([acc[n] if n < acc.precision else 0 for n in range(N)])


def log_derivative_ratio(t: PowerSeries, N: int) -> PowerSeries:
    """(q dt/dq) / t through q^(N-1).

    Writing t = q^o T with T(0) != 0, this is o + q T'/T.
    """
    t = t.normalized()
    if t.is_zero():
        raise DomainError("logarithmic derivative of the zero series")
    T = PowerSeries(t.coeffs)
    if T.order < N:
        raise SeriesRangeError(f"t is known to relative order {T.order}; need {N}")
    T = T.truncate(N)
    dT = PowerSeries([i * c for i, c in enumerate(T.coeffs)])
    ratio = dT * T.inverse()
    return PowerSeries([ratio[n] + (t.offset if n == 0 else 0) for n in range(N)])


# The Gamma_0(6) Hauptmodul and the eta-quotient form of sum C(n,2,1) t^n.
HAUPTMODUL_T = EtaQuotient([(1, 4), (6, 8), (2, -8), (3, -4)])
GF_F = EtaQuotient([(2, 6), (3, 1), (1, -3), (6, -2)])


@dataclass(frozen=True)
class MatchReport:
    N: int
    matched: bool
    first_mismatch: Optional[int]
    lhs: tuple
    rhs: tuple

    def describe(self) -> str:
        if self.matched:
            return f"match through q^{self.N - 1}"
        n = self.first_mismatch
        return f"mismatch at q^{n}: {self.lhs[n]} != {self.rhs[n]}"


def _compare(lhs: list, rhs: list, N: int) -> MatchReport:
    first = next((n for n in range(N) if lhs[n] != rhs[n]), None)
    return MatchReport(N, first is None, first, tuple(lhs), tuple(rhs))


def verify_gf_parametrization(N: int) -> MatchReport:
    """Compare sum C(n,2,1) t(q)^n with the eta quotient for f through q^(N-1)."""
    if N < 1:
        raise ParameterError("N must be positive")
    params = SequenceParams(2, 1)
    t = eta_quotient_expand(HAUPTMODUL_T, N + 1)
    lhs = compose([C(n, params) for n in range(N)], t, N)
    rhs = eta_quotient_expand(GF_F, N)
    return _compare(lhs.coefficients(N), rhs.coefficients(N), N)


E_CONSTANT = Fraction(-1, 9)


@dataclass(frozen=True)
class RemarkReport:
    """E(z) + 8 E(2z) against f(q) (q dt/dq)/t.

    ``printed`` compares the identity as written; ``relation`` is the exact
    relation found coefficientwise: "equal", "negated", "scalar" (a constant
    multiple, stored in ``scalar``) or "none".
    """

    N: int
    lhs: tuple
    rhs: tuple
    printed: MatchReport
    relation: str
    scalar: Optional[Fraction]

    def describe(self) -> str:
        lines = [f"LHS  E(z) + 8E(2z)      : {', '.join(map(str, self.lhs[:8]))}, ...",
                 f"RHS  f(q) (q dt/dq) / t : {', '.join(map(str, self.rhs[:8]))}, ...",
                 f"constant terms: LHS {self.lhs[0]}, RHS {self.rhs[0]}"]
        if self.printed.matched:
            lines.append(f"identity as printed: holds through q^{self.N - 1}")
        else:
            n = self.printed.first_mismatch
            lines.append(f"identity as printed: fails first at q^{n} "
                         f"(LHS {self.lhs[n]}, RHS {self.rhs[n]})")
        if self.relation == "equal":
            lines.append("exact relation: LHS = RHS")
        elif self.relation == "negated":
            lines.append(f"exact relation: LHS = -RHS through q^{self.N - 1}")
        elif self.relation == "scalar":
            lines.append(f"exact relation: LHS = ({self.scalar}) * RHS through q^{self.N - 1}")
        else:
            lines.append("exact relation: none of the form LHS = c * RHS")
        return "\n".join(lines)


def remark_sides(N: int) -> tuple[list, list]:
    E = eisenstein_series(DirichletCharacter.chi_minus3(), 3, E_CONSTANT, N)
    lhs = E + 8 * E.substitute_power(2)
    f = eta_quotient_expand(GF_F, N)
    t = eta_quotient_expand(HAUPTMODUL_T, N + 1)
    rhs = f * log_derivative_ratio(t, N)
    return lhs.coefficients(N), rhs.coefficients(N)


def verify_remark_identity(N: int) -> RemarkReport:
    if N < 1:
        raise ParameterError("N must be positive")
    lhs, rhs = remark_sides(N)
    printed = _compare(lhs, rhs, N)
    pivot = next((n for n in range(N) if rhs[n]), None)
    scalar = None
    relation = "none"
    if pivot is not None:
        c = lhs[pivot] / rhs[pivot]
        if all(lhs[n] == c * rhs[n] for n in range(N)):
            scalar = c
            relation = {1: "equal", -1: "negated"}.get(c, "scalar")
    elif not any(lhs):
        relation, scalar = "equal", Fraction(1)
    return RemarkReport(N, tuple(lhs), tuple(rhs), printed, relation, scalar)
