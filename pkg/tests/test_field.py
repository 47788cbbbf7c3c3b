from fractions import Fraction

import pytest

from hq.field import (
    NoNegativeNormUnit,
    NotFundamentalDiscriminant,
    enumerate_line,
    find_restriction_unit,
    format_elt,
    is_square_mod4,
    make_field,
)


def test_omega_conventions():
    F5, F8 = make_field(5), make_field(8)
    assert (F5.omega_trace, F5.omega_norm) == (1, -1)
    assert (F8.omega_trace, F8.omega_norm) == (0, -2)
    assert F5.w * F5.w == F5.w + 1
    assert F8.w * F8.w == F8(2)


def test_rejects_bad_discriminants():
    for D in (1, 4, 6, 9, -3, 20):
        with pytest.raises(NotFundamentalDiscriminant):
            make_field(D)


def test_arithmetic(F5):
    x = F5.parse("3-2*w")
    y = F5.parse("1+w")
    assert x * y / y == x
    assert x.norm() == 9 - 6 - 4
    assert x.trace() == 4
    assert (x * x.conjugate()).b == 0
    assert format_elt(F5.parse("-2-1*w")) == "-2-1*w"
    assert F5.parse("w") == F5(0, 1) and F5.parse("-w") == F5(0, -1) and F5.parse("7") == F5(7)


def test_fundamental_units():
    assert make_field(5).fundamental_unit == make_field(5).w
    eps = make_field(8).fundamental_unit
    assert eps.norm() == -1 and eps.embeddings()[0] > 1
    assert make_field(12).fundamental_unit.norm() == 1
    tp = make_field(5).totally_positive_unit
    assert tp.is_totally_positive() and tp.norm() == 1


def test_restriction_unit(F5, U5):
    assert U5.u == F5.w
    assert U5.delta.is_totally_positive()
    for xi in (F5(3), F5(2, 1), F5(7, -3)):
        assert U5.index(xi) == (xi / U5.delta).trace()
    with pytest.raises(NoNegativeNormUnit):
        find_restriction_unit(make_field(12))


@pytest.mark.parametrize("D", [5, 8, 13, 17, 29])
def test_enumerate_line(D):
    F = make_field(D)
    U = find_restriction_unit(F)
    for n in range(1, 12):
        pts = enumerate_line(U, n)
        assert all(p.is_totally_positive() and U.index(p) == n for p in pts)
        assert len(set(pts)) == len(pts)
    assert F(0) in enumerate_line(U, 0, include_zero=True)


def test_square_mod4(F5):
    assert is_square_mod4(F5(1)) and is_square_mod4(F5(-4)) and is_square_mod4(F5(5))
    assert not is_square_mod4(F5(-1)) and not is_square_mod4(F5(2))
    assert is_square_mod4(F5.parse("1+w") ** 2 * Fraction(1))
