from fractions import Fraction as F
from math import gcd

import pytest
from hypothesis import given, strategies as st

from markedtori.veech import (MINUS_I, ROTATION, T_GEN, U_GEN, IntegerMatrix2, RationalMarking2,
                              congruence_branch, coset_index, cusp_count, gamma1_index,
                              generator_words, index_via_asymptotics, is_closed,
                              membership_congruence, membership_stabilizer, orbit_coset_index,
                              orbit_index, orbit_index_bruteforce, ratio_invariant,
                              ratio_invariant_classes, reduce_to_canonical, veech_index)

I2 = IntegerMatrix2.identity()


def test_matrix_validation():
    with pytest.raises(ValueError):
        IntegerMatrix2(1, 1, 1, 1)
    M = IntegerMatrix2(2, 1, 1, 1)
    assert M @ M.inverse() == I2


def test_marking_validation():
    with pytest.raises(ValueError):
        RationalMarking2(0, 1, 0, 1)
    with pytest.raises(ValueError):
        RationalMarking2(2, 4, 0, 1)
    assert RationalMarking2.of(F(3, 2), 0) == RationalMarking2(1, 2, 0, 1)


def test_congruence_examples():
    assert membership_congruence(RationalMarking2.of(F(1, 2), 0), T_GEN)
    assert membership_congruence(RationalMarking2.of(F(1, 2), F(1, 2)), ROTATION)
    assert membership_congruence(RationalMarking2.of(F(2, 7), F(3, 5)), I2)


def test_stabilizer_examples():
    x = RationalMarking2.of(F(1, 3), 0)
    assert membership_stabilizer(x, IntegerMatrix2(1, 0, 3, 1))
    assert not membership_stabilizer(x, IntegerMatrix2(0, -1, 1, 0))
    assert membership_stabilizer(RationalMarking2.of(F(1, 2), F(1, 2)), MINUS_I)


@pytest.mark.parametrize("branch", ["axis", "equal"])
def test_congruence_matches_stabilizer_on_sound_branches(branch):
    # the axis and equal-denominator descriptions agree with the stabilizer test
    words = generator_words(6)
    for q1 in range(1, 9):
        for q2 in range(1, 9):
            for p1 in range(q1):
                for p2 in range(q2):
                    if gcd(p1, q1) != 1 or gcd(p2, q2) != 1 or (p1, p2) == (0, 0):
                        continue
                    x = RationalMarking2(p1, q1, p2, q2)
                    if congruence_branch(x) != branch:
                        continue
                    for M in words:
                        assert membership_congruence(x, M) == membership_stabilizer(x, M)


def test_generator_words_count():
    assert len(generator_words(0)) == 1
    assert {T_GEN, U_GEN, MINUS_I} <= generator_words(1)


def test_stabilizer_group_closure():
    x = RationalMarking2.of(F(1, 3), F(1, 6))
    members = [M for M in generator_words(5) if membership_stabilizer(x, M)][:40]
    assert is_closed(members, lambda M: membership_stabilizer(x, M))


@pytest.mark.parametrize("p, q, n", [(1, 0, 5), (2, 1, 5), (3, 2, 7), (0, 1, 6), (4, 6, 9), (5, 5, 12)])
def test_reduce_examples(p, q, n):
    A = reduce_to_canonical(p, q, n)
    img = A.apply(F(p, n), F(q, n))
    assert (img[0] - F(1, n)).denominator == 1 and img[1].denominator == 1
    if (p, q) == (1, 0):
        assert A == I2


def test_reduce_rejects_non_coprime():
    with pytest.raises(ValueError):
        reduce_to_canonical(2, 4, 6)


@given(st.integers(2, 40), st.integers(0, 39), st.integers(0, 39))
def test_reduce_postcondition(n, p, q):
    if gcd(gcd(p, q), n) != 1:
        return
    A = reduce_to_canonical(p, q, n)
    img = A.apply(F(p, n), F(q, n))
    assert (img[0] - F(1, n)).denominator == 1 and img[1].denominator == 1


def test_conjugation_invariance():
    words = sorted(generator_words(5), key=lambda M: (M.a, M.b, M.c, M.d))
    for p, q, n in [(2, 1, 5), (3, 2, 7), (1, 1, 4), (0, 1, 6)]:
        A = reduce_to_canonical(p, q, n)
        x = RationalMarking2.of(F(p, n), F(q, n))
        canon = RationalMarking2.of(F(1, n), 0)
        for M in words:
            assert membership_stabilizer(x, M) == membership_stabilizer(canon, A @ M @ A.inverse())


@pytest.mark.parametrize("n, v", [(2, 3), (3, 8), (6, 24)])
def test_orbit_index_examples(n, v):
    assert orbit_index(n) == v == orbit_index_bruteforce(n)


@pytest.mark.parametrize("n, v", [(2, 3), (3, 4), (6, 12)])
def test_veech_index_examples(n, v):
    assert veech_index(n) == v


@pytest.mark.parametrize("n, v", [(2, 1), (5, 2), (12, 2)])
def test_cusp_examples(n, v):
    assert cusp_count(n) == v


@pytest.mark.parametrize("n, v", [(2, 3), (7, 24), (10, 36)])
def test_asymptotic_index_examples(n, v):
    assert index_via_asymptotics(n) == v == veech_index(n)


@pytest.mark.parametrize("n, v", [(2, 3), (3, 8), (4, 12)])
def test_gamma1_examples(n, v):
    assert gamma1_index(n) == v


def test_gamma1_is_index_two():
    for n in range(3, 200):
        assert gamma1_index(n) == 2 * veech_index(n)


def test_small_n_rejected():
    for f in (orbit_index, veech_index, cusp_count, index_via_asymptotics, gamma1_index):
        with pytest.raises(ValueError):
            f(1)


def test_ratio_invariant_examples():
    assert ratio_invariant(5, 2) == F(2, 3)
    assert ratio_invariant(5, 3) == F(2, 3)
    assert ratio_invariant(2, 1) == 1
    with pytest.raises(ValueError):
        ratio_invariant(6, 2)


def test_coset_counts():
    for n in range(2, 13):
        assert orbit_coset_index(n) == veech_index(n)
    for n in range(2, 9):
        x = RationalMarking2.of(F(1, n), 0)
        assert coset_index(lambda M: membership_stabilizer(x, M)) == veech_index(n)


def test_ratio_classes_give_cusps():
    for n in range(3, 51):
        assert len(ratio_invariant_classes(n)) == cusp_count(n)
