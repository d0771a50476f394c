from fractions import Fraction as F
from math import gcd, pi

import pytest
from hypothesis import given, strategies as st

from markedtori.numtheory import (FactoredInteger, coprime_inverse_square_sum, coprime_pair_count,
                                  coprime_pair_count_bruteforce, coprime_residues, euler_phi,
                                  factorize, inverse_square_prefix, l_chi0_coefficient,
                                  partial_l_sum, principal_character)


@pytest.mark.parametrize("n, phi", [(1, 1), (6, 2), (5, 4)])
def test_euler_phi_examples(n, phi):
    assert euler_phi(n) == phi


def test_euler_phi_rejects_zero():
    with pytest.raises(ValueError):
        euler_phi(0)


@pytest.mark.parametrize("n, m, expected", [(3, 1, {1, 2}), (2, 1, {1}), (6, 3, {1}), (1, 1, set())])
def test_coprime_residues_examples(n, m, expected):
    assert coprime_residues(n, m) == expected


def test_coprime_residues_needs_divisor():
    with pytest.raises(ValueError):
        coprime_residues(6, 4)


def test_principal_character():
    assert principal_character(6, 5) == 1
    assert principal_character(6, 4) == 0
    assert principal_character(1, 0) == 1


@pytest.mark.parametrize("n, r", [(1, F(1)), (2, F(3, 4)), (6, F(2, 3))])
def test_l_chi0_coefficient_examples(n, r):
    assert l_chi0_coefficient(n) == r


def test_partial_l_sum_examples():
    assert abs(partial_l_sum(1, 10**6) - pi**2 / 6) < 1e-5
    assert abs(partial_l_sum(2, 10**6) - 0.75 * pi**2 / 6) < 1e-5
    assert partial_l_sum(4, 1) == 1.0


def test_phi_matches_residue_count():
    # I^1 is empty while phi(1) = 1
    for n in range(2, 10**4 + 1):
        assert euler_phi(n) == len(coprime_residues(n))


def test_phi_bruteforce_small():
    for n in range(2, 300):
        assert euler_phi(n) == sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@given(st.integers(1, 500), st.integers(1, 500))
def test_phi_multiplicative(a, b):
    if gcd(a, b) == 1:
        assert euler_phi(a * b) == euler_phi(a) * euler_phi(b)


@given(st.integers(1, 40), st.sampled_from([10, 100, 1000, 5000]))
def test_partial_sum_tail_bound(n, terms):
    assert abs(partial_l_sum(n, terms) - float(l_chi0_coefficient(n)) * pi**2 / 6) < 1 / terms


@given(st.integers(1, 10**6))
def test_factorization_roundtrip(n):
    f = factorize(n)
    assert isinstance(f, FactoredInteger) and f.n == n


def test_factored_integer_validation():
    with pytest.raises(ValueError):
        FactoredInteger(12, ((2, 1), (3, 1)))
    with pytest.raises(ValueError):
        FactoredInteger(6, ((3, 1), (2, 1)))


def test_coprime_pair_count_bruteforce():
    for n in range(1, 60):
        assert coprime_pair_count(n) == coprime_pair_count_bruteforce(n)


def test_inverse_square_sum_mobius_route():
    prefix = inverse_square_prefix(200)
    for n in range(1, 200):
        direct = sum((F(1, i * i) for i in coprime_residues(n)), F(0))
        assert coprime_inverse_square_sum(n, prefix) == direct
