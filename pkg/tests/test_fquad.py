import random

import numpy as np
import pytest

from hq.field import make_field
from hq.fquad import (
    QuadCharQ,
    q_mode_agrees,
    relative_discriminant,
    relative_discriminant_q,
    sqrt_elt,
)
from hq.ideals import ideal_from_element, parse_ideal, primes_above


def test_examples(F5):
    chi = relative_discriminant(F5, F5.parse("-2-w"))
    assert chi.disc == parse_ideal(F5, "[5, 2+w]")
    assert chi.cond.norm == 1
    chi4 = relative_discriminant(F5, F5(-4))
    assert chi4.disc == ideal_from_element(F5(4)) and chi4.cond.norm == 1
    assert relative_discriminant(F5, F5.parse("1+w")).square_class_flag
    assert relative_discriminant(F5, F5(9)).square_class_flag


def test_parity(F5):
    chi = relative_discriminant(F5, F5(-4))
    assert chi.is_totally_odd() and not chi.is_totally_even()
    assert relative_discriminant(F5, F5.parse("5+w")).is_totally_even()


def test_character_values(F5):
    chi = relative_discriminant(F5, F5(-4))
    for p in (3, 7, 11, 13, 19, 29):
        for P in primes_above(F5, p):
            # -4 is a square mod P iff -1 is, i.e. iff N(P) = 1 mod 4
            assert chi.at_prime(P) == (1 if P.norm % 4 == 1 else -1)
    assert chi.at_prime(primes_above(F5, 2)[0]) == 0


def test_sqrt():
    F = make_field(13)
    x = F.parse("3+2*w")
    assert sqrt_elt(x * x) in (x, -x)
    assert sqrt_elt(F(2)) is None


@pytest.mark.parametrize("D", [5, 8, 13, 12, 21])
def test_psi_matches_ideal_character(D):
    F = make_field(D)
    rng = random.Random(D)
    for x in (F(-4), F(-3), F(5, 1), F(-1, 2)):
        chi = relative_discriminant(F, x)
        etas = []
        while len(etas) < 40:
            e = F(rng.randint(1, 60), rng.randint(-8, 8))
            if e.is_totally_positive():
                etas.append(e)
        for e in etas:
            assert chi.psi(e) == chi(ideal_from_element(e)), (x, e)
        arr = chi.psi_array([int(e.a) for e in etas], [int(e.b) for e in etas])
        assert arr.dtype == np.int8
        assert list(arr) == [chi.psi(e) for e in etas]


def test_dyadic_fractional_conductor():
    F = make_field(5)
    x = F.parse("17+46*w")
    chi = relative_discriminant(F, x)
    assert chi.cond_den > 1
    assert chi.cond * chi.cond * chi.disc == ideal_from_element(x * chi.cond_den**2)


def test_q_mode():
    assert all(q_mode_agrees(s * N) for N in range(1, 400) for s in (1, -1))
    q = relative_discriminant_q(-12)
    assert isinstance(q, QuadCharQ) and (q.D, q.cond) == (-3, 2)
