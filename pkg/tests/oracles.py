"""Brute-force reference computations, deliberately independent of the package."""

from fractions import Fraction


def pascal_rows(n_max):
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        rows.append([1] + [prev[i] + prev[i + 1] for i in range(n - 1)] + [1])
    return rows


_ROWS = pascal_rows(1100)


def binom(n, k):
    return _ROWS[n][k] if 0 <= k <= n else 0


def valuation(x, p):
    x = Fraction(x)
    if x == 0:
        return float("inf")
    v = 0
    num, den = abs(x.numerator), x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def carries(a, b, p):
    """Number of carries when adding a and b in base p."""
    count = carry = 0
    while a or b or carry:
        s = a % p + b % p + carry
        carry = 1 if s >= p else 0
        count += carry
        a //= p
        b //= p
    return count


def apery_by_recurrence(n_max):
    vals = [1, 3]
    for n in range(1, n_max):
        nxt = ((11 * n * n + 11 * n + 3) * vals[n] + n * n * vals[n - 1])
        assert nxt % ((n + 1) ** 2) == 0
        vals.append(nxt // (n + 1) ** 2)
    return vals[: n_max + 1]


def C_brute(n, A, B):
    return sum(binom(n, k) ** A * binom(2 * k, k) ** B for k in range(n + 1))


def eta_product_naive(factors, N):
    """Integer coefficients of prod_d prod_n (1 - q^(dn))^e through q^(N-1), no offset."""
    def mul(a, b):
        out = [0] * N
        for i, x in enumerate(a):
            if x:
                for j in range(N - i):
                    out[i + j] += x * b[j]
        return out

    def geometric(step):
        return [1 if i % step == 0 else 0 for i in range(N)]

    s = [1] + [0] * (N - 1)
    for d, e in factors:
        n = 1
        while d * n < N:
            step = d * n
            f = [0] * N
            f[0], f[step] = 1, -1
            g = f if e > 0 else geometric(step)
            for _ in range(abs(e)):
                s = mul(s, g)
            n += 1
    return s


def divisor_sum(n, chi, power):
    return sum(chi(d) * d**power for d in range(1, n + 1) if n % d == 0)
