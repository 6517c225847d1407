from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from congruence_forge.errors import DomainError, ParameterError, SeriesRangeError
from congruence_forge.qseries import (GF_F, HAUPTMODUL_T, DirichletCharacter, EigenformSpec,
                                      EtaQuotient, PowerSeries, compose, eigenform_coefficients,
                                      eisenstein_series, eta6_4z_coefficient, eta6_4z_table,
                                      eta_quotient_expand, log_derivative_ratio, sigma_chi,
                                      verify_gf_parametrization, verify_remark_identity)

from oracles import divisor_sum, eta_product_naive

TRIVIAL = DirichletCharacter.trivial()
CHI3 = DirichletCharacter.chi_minus3()
PRINCIPAL3 = DirichletCharacter.principal(3)

coeff_lists = st.lists(st.integers(-9, 9), min_size=32, max_size=32)
unit_lists = st.lists(st.integers(-9, 9), min_size=31, max_size=31).map(lambda c: [1] + c)


@settings(max_examples=25, deadline=None)
@given(coeff_lists, coeff_lists, coeff_lists)
def test_multiplication_is_associative(a, b, c):
    f, g, h = PowerSeries(a), PowerSeries(b), PowerSeries(c)
    assert (f * g) * h == f * (g * h)


@settings(max_examples=25, deadline=None)
@given(unit_lists)
def test_inverse(a):
    f = PowerSeries(a)
    assert f * f.inverse() == PowerSeries.constant(1, 32)


@settings(max_examples=25, deadline=None)
@given(coeff_lists, coeff_lists)
def test_leibniz_rule(a, b):
    f, g = PowerSeries(a), PowerSeries(b)
    lhs = (f * g).derivative()
    rhs = f.derivative() * g + f * g.derivative()
    assert lhs.agrees_with(rhs)
    assert lhs.precision == 31


def test_series_basics():
    q = PowerSeries.q(5)
    assert q[1] == 1 and q[0] == 0 and q.precision == 5
    with pytest.raises(SeriesRangeError):
        q[5]
    assert (q * q)[2] == 1
    assert (1 - q).inverse().coefficients(5) == [1, 1, 1, 1, 1]
    assert PowerSeries([0, 0, 3, 1]).normalized().offset == 2
    with pytest.raises(DomainError):
        PowerSeries([0, 0, 0]).inverse()
    assert PowerSeries([1, 2, 3]).substitute_power(2).coefficients(5) == [1, 0, 2, 0, 3]


def test_eta6_4z_expansion():
    s = eta_quotient_expand(EtaQuotient([(4, 6)]), 12)
    assert s.offset == 1
    assert [(n, s[n]) for n in range(12) if s[n]] == [(1, 1), (5, -6), (9, 9)]


def test_eta6_4z_support_and_oracle():
    table = eta6_4z_table(200)
    assert all(a == 0 for n, a in enumerate(table) if n % 4 != 1)
    naive = eta_product_naive([(4, 6)], 200)
    assert list(table) == [0] + naive[:199]


def test_eta6_4z_coefficient_access():
    assert [eta6_4z_coefficient(n) for n in (1, 3, 5, 9, 13, 17)] == [1, 0, -6, 9, 10, -30]
    with pytest.raises(SeriesRangeError):
        eta6_4z_coefficient(50, N=20)


def test_hauptmodul_expansion():
    t = eta_quotient_expand(HAUPTMODUL_T, 5)
    assert t.coefficients(5) == [0, 1, -4, 10, -20]


def test_eta_quotient_matches_naive_products():
    N = 40
    for quot in (GF_F, HAUPTMODUL_T, EtaQuotient([(1, 24)]), EtaQuotient([(2, -24), (1, 48)])):
        got = eta_quotient_expand(quot, N)
        off = int(quot.q_offset)
        # multiply back the denominators: naive product with all exponents positive
        num = eta_product_naive([(d, e) for d, e in quot.factors if e > 0], N)
        den = eta_product_naive([(d, -e) for d, e in quot.factors if e < 0], N)
        recovered = PowerSeries(got.coeffs) * PowerSeries(den[:got.order])
        assert recovered.coefficients(N - off) == num[: N - off]


def test_eta_quotient_empty_and_fractional():
    assert eta_quotient_expand(EtaQuotient(), 4).coefficients(4) == [1, 0, 0, 0]
    with pytest.raises(ParameterError):
        eta_quotient_expand(EtaQuotient([(1, 1)]), 4)
    assert EtaQuotient.parse("4:6").factors == ((4, 6),)
    with pytest.raises(ParameterError):
        EtaQuotient.parse("4;6")


def test_characters():
    assert [CHI3(n) for n in range(6)] == [0, 1, -1, 0, 1, -1]
    assert [PRINCIPAL3(n) for n in range(4)] == [0, 1, 1, 0]
    with pytest.raises(ParameterError):
        DirichletCharacter(3, (0, 1, 1, 1))
    with pytest.raises(ParameterError):
        DirichletCharacter(4, (0, 1, 0, 1j))  # not multiplicative


def test_eisenstein_series():
    E = eisenstein_series(CHI3, 3, Fraction(-1, 9), 8)
    assert E[0] == Fraction(-1, 9)
    assert E.coefficients(5)[1:] == [1, -3, 1, 13]
    assert sigma_chi(6, CHI3, 2) == -3


def test_sigma_matches_divisor_enumeration_and_is_multiplicative():
    for chi in (TRIVIAL, CHI3, PRINCIPAL3):
        for w in (0, 1, 2, 3):
            for n in range(1, 101):
                assert sigma_chi(n, chi, w) == divisor_sum(n, chi, w)
    for m in range(1, 101):
        for n in range(1, 101 // m + 1):
            if gcd(m, n) == 1:
                assert sigma_chi(m * n, CHI3, 2) == sigma_chi(m, CHI3, 2) * sigma_chi(n, CHI3, 2)


def test_eigenform_coefficients():
    assert eigenform_coefficients(EigenformSpec(3), 6)[1:] == [1, 5, 10, 21, 26]
    assert EigenformSpec(3, CHI3).gamma(7) == 50
    assert EigenformSpec(3).gamma(1) == 1
    for k in (2, 3, 4):
        for chi in (TRIVIAL, CHI3, PRINCIPAL3):
            spec = EigenformSpec(k, chi)
            gam = eigenform_coefficients(spec, 51)
            for p in (2, 3, 5, 7, 11, 13, 47):
                assert gam[p] == 1 + chi(p) * p ** (k - 1)
            for m in range(1, 51):
                for n in range(1, 50 // m + 1):
                    if gcd(m, n) == 1:
                        assert gam[m * n] == gam[m] * gam[n]


def test_compose():
    t = eta_quotient_expand(HAUPTMODUL_T, 4)
    assert compose([1, 3, 15, 93], t, 4).coefficients(4) == [1, 3, 3, 3]
    zero = PowerSeries([0, 0, 0, 0])
    assert compose([7, 1, 2], zero, 4).coefficients(4) == [7, 0, 0, 0]
    assert compose([0, 1], t, 4).coefficients(4) == t.coefficients(4)
    with pytest.raises(DomainError):
        compose([1, 1], PowerSeries([1, 1, 1]), 3)


def test_log_derivative_ratio():
    assert log_derivative_ratio(PowerSeries.q(6), 5).coefficients(5) == [1, 0, 0, 0, 0]
    t = PowerSeries([1, -4, 10, -20, 39], offset=1)
    ld = log_derivative_ratio(t, 3)
    # q t'/t = 1 + q T'/T with T = 1 - 4q + 10q^2
    assert ld.coefficients(3) == [1, -4, 4]
    geometric = PowerSeries([1] * 10, offset=1)  # q / (1 - q)
    assert log_derivative_ratio(geometric, 8).coefficients(8) == [1] * 8
    with pytest.raises(DomainError):
        log_derivative_ratio(PowerSeries([0, 0, 0]), 2)


def test_gf_parametrization():
    assert verify_gf_parametrization(1).matched
    report = verify_gf_parametrization(4)
    assert report.matched and report.lhs == (1, 3, 3, 3)
    full = verify_gf_parametrization(40)
    assert full.matched and full.describe() == "match through q^39"


def test_remark_identity_report():
    report = verify_remark_identity(30)
    assert report.lhs[0] == -1 and report.rhs[0] == 1
    assert not report.printed.matched and report.printed.first_mismatch == 0
    assert report.relation == "negated" and report.scalar == -1
    assert all(a == -b for a, b in zip(report.lhs, report.rhs))
    assert "fails first at q^0" in report.describe()
    assert verify_remark_identity(1).relation == "negated"
