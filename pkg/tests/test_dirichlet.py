from fractions import Fraction

import pytest

from hq.dirichlet import (
    L_neg,
    bernoulli,
    cohen_H,
    hurwitz_H,
    kronecker,
    lambda1,
    lambda1_literal,
    sigma,
    verify_classical,
    zeta_neg,
)


def test_bernoulli_and_zeta():
    assert [bernoulli(k) for k in (0, 1, 2, 4, 6)] == [1, Fraction(-1, 2), Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42)]
    assert zeta_neg(-1) == Fraction(-1, 12)
    assert zeta_neg(-3) == Fraction(1, 120)


def test_dirichlet_L():
    assert L_neg(-4, 0) == Fraction(1, 2)
    assert L_neg(-4, -2) == Fraction(-1, 2)
    assert L_neg(-4, -4) == Fraction(5, 2)
    assert L_neg(5, -1) == Fraction(-2, 5)
    assert L_neg(-3, 0) == Fraction(1, 3)


def test_kronecker():
    assert kronecker(-4, 3) == -1 and kronecker(-4, 5) == 1 and kronecker(-4, 2) == 0
    assert kronecker(5, 2) == -1 and kronecker(8, 7) == 1


def test_hurwitz_values():
    expected = {0: Fraction(-1, 12), 3: Fraction(1, 3), 4: Fraction(1, 2), 7: 1, 8: 1, 11: 1, 12: Fraction(4, 3), 15: 2, 23: 3}
    for N, h in expected.items():
        assert hurwitz_H(N) == h
    assert all(hurwitz_H(N) == 0 for N in range(1, 1001) if N % 4 in (1, 2))
    assert all(hurwitz_H(N) > 0 for N in range(3, 1001) if N % 4 in (0, 3))


def test_cohen_H_reduces_to_hurwitz():
    assert all(cohen_H(1, N) == hurwitz_H(N) for N in range(1, 200))
    assert cohen_H(2, 0) == zeta_neg(-3)
    for r in (2, 3, 4):
        for N in range(1, 60):
            if ((-1) ** r * N) % 4 in (2, 3):
                assert cohen_H(r, N) == 0


def test_lambda_normalisation():
    assert lambda1(4) == Fraction(1, 2) * (1 + 2 + 1)
    assert lambda1_literal(4) == 4


def test_sigma_zero_convention():
    assert sigma(0, 1) == zeta_neg(-1) / 2
    assert sigma(Fraction(1, 2), 3) == 0


def test_classical_relations():
    for rep in verify_classical(120):
        assert rep.passed, rep.summary()
