import random
from fractions import Fraction

import pytest

from congruence_forge.errors import ParameterError
from congruence_forge.padic import binomial_exact
from congruence_forge.sequences import (APERY_TRIPLE, C, C_mod, SequenceParams, ZagierTriple,
                                        apery_B, apery_B_mod, apery_B_recurrence_check,
                                        at_boundary_index, zagier_integrality_scan, zagier_terms,
                                        zagier_u)

from oracles import C_brute, apery_by_recurrence

A002893 = [1, 3, 15, 93, 639, 4653, 35169, 272835]


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 3), (2, 19), (3, 147), (4, 1251)])
def test_apery_B_values(n, expected):
    assert apery_B(n) == expected


def test_apery_B_matches_recurrence_oracle():
    assert [apery_B(n) for n in range(101)] == apery_by_recurrence(100)


@pytest.mark.parametrize("nmax", [1, 2, 20, 60])
def test_apery_recurrence_check(nmax):
    assert apery_B_recurrence_check(nmax)


def test_C_sequence_A002893():
    assert [C(n, SequenceParams(2, 1)) for n in range(8)] == A002893


@pytest.mark.parametrize("n, A, B, expected", [
    (0, 4, 3, 1), (2, 2, 1, 15), (5, 3, 1, 35253), (7, 3, 0, 104960), (3, 1, 0, 8),
])
def test_C_values(n, A, B, expected):
    assert C(n, SequenceParams(A, B)) == expected


def test_C_matches_brute_force():
    for A in (1, 2, 3, 4):
        for B in (0, 1, 2):
            for n in range(0, 40):
                assert C(n, (A, B)) == C_brute(n, A, B)


def test_C_n_2_0_is_central_binomial():
    for n in range(201):
        assert C(n, SequenceParams(2, 0)) == binomial_exact(2 * n, n)


def test_positive_and_increasing():
    apery = [apery_B(n) for n in range(51)]
    assert all(0 < a < b for a, b in zip(apery, apery[1:]))
    for A in (1, 2, 3):
        for B in (1, 2):
            vals = [C(n, (A, B)) for n in range(51)]
            assert all(0 < a < b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("n, params, p, K, expected", [
    (5, (2, 1), 5, 2, 3),
    (0, (3, 1), 7, 3, 1),
    (7, (3, 0), 7, 3, 104960 % 343),
])
def test_C_mod_examples(n, params, p, K, expected):
    assert C_mod(n, params, p, K) == expected


def test_C_mod_random_grid():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(0, 400)
        p = rng.choice([2, 3, 5, 7, 11, 13])
        K = rng.randint(1, 9)
        A, B = rng.randint(1, 4), rng.randint(0, 3)
        assert C_mod(n, (A, B), p, K) == C(n, (A, B)) % p**K


def test_apery_B_mod():
    for n in range(0, 60, 7):
        assert apery_B_mod(n, 5, 4) == apery_B(n) % 625


def test_sequence_params_validation():
    with pytest.raises(ParameterError):
        SequenceParams(0, 1)
    with pytest.raises(ParameterError):
        SequenceParams(2, -1)
    with pytest.raises(ParameterError):
        C(-1, (2, 1))


def test_zagier_examples():
    assert zagier_terms(ZagierTriple(11, -1, 3), 2) == [1, -3, -14]
    assert zagier_terms(ZagierTriple(11, -1, -3), 3) == [1, 3, 19, 147]
    assert zagier_u(ZagierTriple(Fraction(1, 3), 7, 2), 0) == 1
    assert zagier_u(ZagierTriple(1, 2, 3), 1) == Fraction(3, 2)


def test_zagier_reproduces_apery():
    assert zagier_terms(APERY_TRIPLE, 100) == [apery_B(n) for n in range(101)]


def test_zagier_rejects_b_zero():
    with pytest.raises(ParameterError):
        ZagierTriple(1, 0, 1)


def test_zagier_integrality_scan():
    assert zagier_integrality_scan(APERY_TRIPLE, 50) is None
    # u(1) = 0, then 4 u(2) + 1 = 0
    assert zagier_integrality_scan(ZagierTriple(1, 1, 0), 5) == 2
    # u(3) = -298/3 by the forward recurrence
    assert zagier_integrality_scan(ZagierTriple(11, -1, 3), 10) == 3
    assert zagier_integrality_scan(ZagierTriple(1, 1, 0), 1) is None


def test_boundary_index_convention():
    assert at_boundary_index(apery_B, 2) == (19, False)
    assert at_boundary_index(apery_B, -1) == (0, True)
    assert at_boundary_index(apery_B, Fraction(-2, 5)) == (0, True)
    assert at_boundary_index(apery_B, Fraction(3, 2)) == (0, True)
