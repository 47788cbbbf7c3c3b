"""Property-based checks with hypothesis."""

from fractions import Fraction

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from hq.cohen import h_coeff_q
from hq.dirichlet import cohen_H, hurwitz_H
from hq.field import find_restriction_unit, make_field
from hq.fquad import relative_discriminant
from hq.ideals import factor_ideal, ideal_from_element, primes_above
from hq.qseries import QSeries
from hq.shintani import partial_zeta_neg, ray_classes

FIELDS = [5, 8, 12, 13, 17, 21, 24]
coords = st.integers(-30, 30)
settings.register_profile("hq", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("hq")


@given(st.sampled_from(FIELDS), coords, coords, coords, coords)
def test_field_ring_axioms(D, a, b, c, d):
    F = make_field(D)
    x, y = F(a, b), F(c, d)
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x + y).trace() == x.trace() + y.trace()
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    if not y.is_zero():
        assert (x / y) * y == x


@given(st.sampled_from(FIELDS), coords, coords)
def test_factorisation_rebuilds_ideal(D, a, b):
    F = make_field(D)
    x = F(a, b)
    assume(not x.is_zero())
    I = ideal_from_element(x)
    prod = ideal_from_element(F(1))
    for P, e in factor_ideal(I):
        prod = prod * P.ideal ** e
    assert prod == I and I.norm == abs(x.norm())


@given(st.sampled_from(FIELDS), coords, coords, st.integers(-5, 5), st.integers(-5, 5))
@settings(max_examples=60)
def test_square_class_invariance(D, a, b, c, d):
    F = make_field(D)
    x, t = F(a, b), F(c, d)
    assume(not x.is_zero() and not t.is_zero())
    chi, chi2 = relative_discriminant(F, x), relative_discriminant(F, x * t * t)
    assert chi.disc == chi2.disc
    for p in (2, 3, 5, 7):
        for P in primes_above(F, p):
            if not P.contains(t):
                assert chi.at_prime(P) == chi2.at_prime(P)


@given(st.sampled_from(FIELDS), coords, coords)
@settings(max_examples=60)
def test_conductor_round_trip(D, a, b):
    F = make_field(D)
    x = F(a, b)
    assume(not x.is_zero())
    chi = relative_discriminant(F, x)
    assert chi.cond * chi.cond * chi.disc == ideal_from_element(x * chi.cond_den**2)


@given(st.integers(2, 3), st.integers(0, 200))
def test_q_mode_equivalence(r, N):
    assert h_coeff_q(r, N) == cohen_H(r, N)


@given(st.integers(0, 3000))
def test_hurwitz_support(N):
    assert (hurwitz_H(N) != 0) == (N == 0 or N % 4 in (0, 3))


@given(st.lists(st.fractions(max_denominator=20), min_size=1, max_size=8),
       st.lists(st.fractions(max_denominator=20), min_size=1, max_size=8),
       st.lists(st.fractions(max_denominator=20), min_size=1, max_size=8))
def test_qseries_ring(a, b, c):
    A, B, C = QSeries(a), QSeries(b), QSeries(c)
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert (A + B) * Fraction(1) == B + A


@given(st.sampled_from([5, 8, 13]), st.integers(1, 3), st.integers(0, 25))
@settings(max_examples=25)
def test_restriction_ring_map(D, k, n):
    from hq.qseries import hilbert_rep_counts, line_sums, restrict_theta_F

    F = make_field(D)
    U = find_restriction_unit(F)
    sums = line_sums(F, U, hilbert_rep_counts(F, U, k, 25), 25)
    assert sums[n] == (restrict_theta_F(F, U, 25) ** k)[n]


@given(st.sampled_from([(24, 1), (5, 2), (13, 3), (8, 3)]), st.integers(1, 6), st.integers(0, 3), st.data())
@settings(max_examples=20)
def test_partial_zeta_representative_invariance(case, m, b, data):
    D, mod = case
    F = make_field(D)
    M = ideal_from_element(F(mod))
    ctx = ray_classes(F, M)
    idx = data.draw(st.integers(0, len(ctx) - 1))
    eta = F(m * mod * mod + 1 + 2 * b * mod, b * mod)
    assume(eta.is_totally_positive())
    other = ctx.reps[idx] * ideal_from_element(eta)
    assert ctx.class_of(other) == idx
    assert partial_zeta_neg(ctx, idx, -1, rep=other) == partial_zeta_neg(ctx, idx, -1)
