from fractions import Fraction

import pytest

from hq.dirichlet import kronecker
from hq.field import find_restriction_unit, make_field
from hq.qseries import (
    NotPositiveDefinite,
    QSeries,
    decompose,
    eisenstein_E,
    eisenstein_F,
    hilbert_rep_counts,
    line_sums,
    rep_numbers,
    restrict_theta_F,
    s5_series,
    square_form,
    theta_Q,
    theta_sq,
)
from hq.field import RestrictionUnit


def _eta_product(prec):
    """q prod (1-q^n)^4 (1-q^2n)^2 (1-q^4n)^4, computed directly."""
    c = [0] * (prec + 1)
    c[1] = 1
    for n in range(1, prec + 1):
        for step, power in ((n, 4), (2 * n, 2), (4 * n, 4)):
            if step > prec:
                continue
            for _ in range(power):
                for m in range(prec, step - 1, -1):
                    c[m] -= c[m - step]
    return c


def test_series_arithmetic():
    a = QSeries([1, 2, 3])
    b = QSeries([0, 1, 0, 5])
    assert (a + b).prec == 2
    assert list(a * b) == [0, 1, 2]
    assert list(a**2) == [1, 4, 10]
    assert (a - a).is_zero()
    assert list(Fraction(1, 2) * a) == [Fraction(1, 2), 1, Fraction(3, 2)]


def test_theta_squared_is_r2():
    th = theta_sq(100)
    for n in range(1, 101):
        assert th[n] == 4 * sum(kronecker(-4, d) for d in range(1, n + 1) if n % d == 0)


def test_s5_is_eta_product():
    assert list(s5_series(60)) == _eta_product(60)


def test_weight_three_eisenstein_pair():
    # r_6(n) = 16 sum chi(n/d) d^2 - 4 sum chi(d) d^2
    assert theta_Q(80) ** 6 == -4 * eisenstein_E(1, 80) + 16 * eisenstein_F(1, 80)


def test_decompose_theta_ten():
    dec = decompose(theta_Q(60) ** 10, 2)
    assert (dec.c_E, dec.c_F, dec.c_S) == (Fraction(4, 5), Fraction(64, 5), Fraction(32, 5))
    assert dec.verdict == "multiple_of_S5"
    assert dec.reassemble() == theta_Q(60) ** 10


def test_decompose_flags_non_modular_input():
    bad = theta_Q(30) ** 6 + QSeries([0] * 7 + [1] + [0] * 23)
    assert decompose(bad, 1).verdict == "failed"
    with pytest.raises(ValueError):
        decompose(theta_Q(2), 1)


@pytest.mark.parametrize("D", [5, 8, 13, 29])
def test_square_form_positive(D):
    F = make_field(D)
    A, B, C = square_form(find_restriction_unit(F))
    assert A > 0 and 4 * A * C - B * B > 0


def test_square_form_rejects_indefinite(F5):
    with pytest.raises(NotPositiveDefinite):
        square_form(RestrictionUnit(F5, 1, 0))


@pytest.mark.parametrize("D", [5, 8, 13])
def test_brute_force_counts(D):
    F = make_field(D)
    U = find_restriction_unit(F)
    for k in (1, 2):
        assert line_sums(F, U, hilbert_rep_counts(F, U, k, 40), 40) == list(rep_numbers(F, U, k, 40))
    assert restrict_theta_F(F, U, 200) == theta_sq(200)
