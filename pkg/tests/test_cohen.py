from fractions import Fraction

import pytest

from hq.cohen import UnsupportedQMode, g_table, g_table_q, h_coeff, h_coeff_q, in_support
from hq.dirichlet import cohen_H
from hq.field import make_field, find_restriction_unit


def test_support(F5):
    assert in_support(F5.parse("2+w"), 1)  # -(2+w) = -2-w is a square mod 4
    assert not in_support(F5(1), 1)
    assert in_support(F5(1), 2) and in_support(F5(5), 2)
    assert not in_support(F5.parse("-1+w"), 2)  # not totally positive


def test_single_coefficients(F5):
    assert h_coeff(F5, 1, F5.parse("2+w")) == Fraction(2, 5)
    assert h_coeff(F5, 1, F5(4)) == 1
    assert h_coeff(F5, 2, F5(1)) == Fraction(1, 30)
    # xi = 5: chi_5 has conductor sqrt(5), so the divisor sum contributes 1 + 5^3 - 5 = 121
    assert h_coeff(F5, 2, F5(5)) == Fraction(121, 30)
    assert h_coeff(F5, 1, F5(1)) == 0


def test_d5_lines(F5, U5):
    t1 = g_table(F5, 1, U5, 4)
    assert t1.constant == Fraction(1, 30)
    sums = {n: sum(h for _, h in t1.line(n)) for n in range(1, 5)}
    assert sums == {1: 0, 2: Fraction(2, 5), 3: Fraction(32, 15), 4: 2}
    t2 = g_table(F5, 2, U5, 5)
    assert t2.constant == Fraction(1, 60)
    assert sum(h for _, h in t2.line(1)) == Fraction(1, 15)
    assert sum(h for _, h in t2.line(5)) == Fraction(242, 15)
    rows = t2.rows()
    assert [r[1] for r in rows] == sorted(r[1] for r in rows)


def test_rejects_bad_arguments(F5, U5):
    with pytest.raises(ValueError):
        h_coeff(F5, 0, F5(1))
    with pytest.raises(ValueError):
        g_table(F5, 1, U5, -1)


def test_q_mode_matches_cohen():
    for r in (1, 2, 3, 4):
        for N in range(0, 150):
            assert h_coeff_q(r, N) == cohen_H(r, N), (r, N)
    assert g_table_q(2, 4)[0] == cohen_H(2, 0)
    with pytest.raises(UnsupportedQMode):
        g_table_q(1, 10)


def test_other_field_constant():
    F = make_field(13)
    t = g_table(F, 1, find_restriction_unit(F), 3)
    assert t.constant == Fraction(1, 6)
