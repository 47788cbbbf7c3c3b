import pytest

from hq.field import make_field
from hq.ideals import (
    FactorizationOverflow,
    factor_ideal,
    ideal_divisors,
    ideal_from_element,
    moebius_F,
    parse_ideal,
    primes_above,
    principal,
    prime_factors_int,
    sigma_F,
)


def test_norms_and_containment(F5):
    I = ideal_from_element(F5.parse("2+w"))
    assert I.norm == 5
    assert I.contains(F5.parse("2+w") * F5.parse("3-w"))
    assert not I.contains(F5(1))
    assert parse_ideal(F5, "[5, 2+w]") == I


def test_splitting(F5):
    P = primes_above(F5, 11)
    assert len(P) == 2 and all(p.norm == 11 for p in P)
    assert len(primes_above(F5, 2)) == 1 and primes_above(F5, 2)[0].norm == 4
    assert len(primes_above(F5, 5)) == 1 and primes_above(F5, 5)[0].e == 2


@pytest.mark.parametrize("D", [5, 8, 13, 12, 24])
def test_splitting_matches_kronecker(D):
    from hq.dirichlet import kronecker

    F = make_field(D)
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43):
        Ps = primes_above(F, p)
        k = kronecker(D, p)
        assert len(Ps) == (2 if k == 1 else 1)
        prod = 1
        for P in Ps:
            prod *= P.norm ** P.e
        assert prod == p * p


def test_factor_and_divisors(F5):
    I = principal(F5, 11)
    assert len(ideal_divisors(I)) == 4
    assert moebius_F(principal(F5, 5)) == 0
    assert moebius_F(principal(F5, 2)) == -1
    assert sigma_F(principal(F5, 2), 1) == 5
    assert sigma_F(principal(F5, 11), 3) == 1774224
    fac = factor_ideal(principal(F5, 30))
    prod = principal(F5, 1)
    for P, e in fac:
        prod = prod * P.ideal ** e
    assert prod == principal(F5, 30)


def test_factor_bound():
    assert prime_factors_int(2**5 * 3 * 101) == {2: 5, 3: 1, 101: 1}
    with pytest.raises(FactorizationOverflow):
        prime_factors_int(10**13 + 37, bound=10**12)
