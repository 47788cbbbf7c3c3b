"""Fourier coefficients of the Hilbert Cohen-Eisenstein series over F.

For xi totally positive with x = (-1)^kappa xi a square mod 4,

    H_kappa(xi) = chi'(D_x) L_F(1 - kappa, chi_x chi')
                  * sum_{a | f_x} mu(a) chi_x(a) chi'(a) N(a)^(kappa-1) sigma_{2kappa-1, chi'^2}(f_x / a)

with D_x, f_x, chi_x the relative discriminant, conductor and quadratic
character of F(sqrt x)/F.  A degree-one version over Q reproduces Cohen's
H(r, N) and serves as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from hq.dirichlet import L_neg, divisors, moebius, sigma, zeta_neg
from hq.field import FieldElt, RealQuadField, RestrictionUnit, enumerate_line, is_square_mod4
from hq.fquad import relative_discriminant, relative_discriminant_q
from hq.ideals import DEFAULT_FACTOR_BOUND, OIdeal, divisors_with_factorization
from hq.shintani import hecke_L_neg, partial_zeta_neg, ray_classes, zeta_F_neg


class UnsupportedQMode(ValueError):
    """The weight 3/2 series over Q is not covered by the formula."""


IdealChar = Callable[[OIdeal], int]


def in_support(xi: FieldElt, kappa: int) -> bool:
    return xi.is_totally_positive() and is_square_mod4(xi * (-1) ** kappa)


def _divisor_sum(chi, cond: OIdeal, kappa: int, chi_prime: IdealChar | None, bound: int) -> Fraction:
    """sum_{a | f} mu(a) chi_x(a) chi'(a) N(a)^(kappa-1) sigma_{2kappa-1, chi'^2}(f / a)."""
    cp = chi_prime or (lambda I: 1)
    divs = divisors_with_factorization(cond, bound)
    total = Fraction(0)
    for A, fac in divs:
        if any(e > 1 for _, e in fac):
            continue
        mu = -1 if len(fac) % 2 else 1
        val = mu * chi(A) * cp(A) * Fraction(A.norm) ** (kappa - 1)
        if not val:
            continue
        rest = cond.divide(A)
        sig = sum(
            (Fraction(B.norm) ** (2 * kappa - 1) * cp(B) ** 2 for B, _ in divisors_with_factorization(rest, bound)),
            Fraction(0),
        )
        total += val * sig
    return total


_H_MEMO: dict = {}


def h_coeff(F: RealQuadField, kappa: int, xi: FieldElt, chi_prime: IdealChar | None = None,
            bound: int = DEFAULT_FACTOR_BOUND) -> Fraction:
    """H_kappa(xi, chi'); 0 outside the support."""
    if kappa < 1:
        raise ValueError("kappa must be >= 1")
    if not in_support(xi, kappa):
        return Fraction(0)
    memo_key = (F.D, kappa, xi, chi_prime)
    if memo_key in _H_MEMO:
        return _H_MEMO[memo_key]
    x = xi * (-1) ** kappa
    chi = relative_discriminant(F, x, bound)
    if chi.cond_den != 1:  # pragma: no cover - excluded by the support condition
        raise ArithmeticError(f"fractional conductor for supported x = {x}")
    cp = chi_prime or (lambda I: 1)
    L = hecke_L_neg(F, chi, 1 - kappa, chi_prime)
    if L == 0:
        val = Fraction(0)
    else:
        val = cp(chi.disc) * L * _divisor_sum(chi, chi.cond, kappa, chi_prime, bound)
    _H_MEMO[memo_key] = val
    return val


def g_constant(F: RealQuadField, kappa: int, chi_prime: IdealChar | None = None) -> Fraction:
    """L_F(1 - 2 kappa, conj(chi')^2): zeta_F(1 - 2 kappa) for trivial chi'."""
    s = 1 - 2 * kappa
    if chi_prime is None:
        return zeta_F_neg(F, s)
    ctx = ray_classes(F)
    return sum(
        (Fraction(chi_prime(R)) ** 2 * partial_zeta_neg(ctx, c, s) for c, R in enumerate(ctx.reps)),
        Fraction(0),
    )


@dataclass
class HilbertCoeffTable:
    field: RealQuadField
    kappa: int
    chi_prime: IdealChar | None
    unit: RestrictionUnit
    prec: int
    constant: Fraction
    coeffs: dict = field(default_factory=dict)

    def line(self, n: int) -> list[tuple[FieldElt, Fraction]]:
        return [(xi, h) for xi, h in self.coeffs.items() if self.unit.index(xi) == n]

    def rows(self):
        """(xi, n, H) sorted by n, then by the xi coordinates."""
        out = [(xi, int(self.unit.index(xi)), h) for xi, h in self.coeffs.items()]
        out.sort(key=lambda r: (r[1], r[0].b, r[0].a))
        return out


def g_table(F: RealQuadField, kappa: int, unit: RestrictionUnit, prec: int,
            chi_prime: IdealChar | None = None, progress=None,
            bound: int = DEFAULT_FACTOR_BOUND) -> HilbertCoeffTable:
    if prec < 0:
        raise ValueError("prec must be >= 0")
    if kappa < 1:
        raise ValueError("kappa must be >= 1")
    table = HilbertCoeffTable(F, kappa, chi_prime, unit, prec, g_constant(F, kappa, chi_prime))
    for n in range(1, prec + 1):
        for xi in enumerate_line(unit, n):
            if in_support(xi, kappa):
                table.coeffs[xi] = h_coeff(F, kappa, xi, chi_prime, bound)
        if progress:
            progress(n)
    return table


# ------------------------------------------------------------------ Q mode


def h_coeff_q(r: int, N: int) -> Fraction:
    """The same construction over Q: must equal cohen_H(r, N)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if N == 0:
        return zeta_neg(1 - 2 * r)
    if N < 0:
        return Fraction(0)
    x = (-1) ** r * N
    if x % 4 not in (0, 1):
        return Fraction(0)
    q = relative_discriminant_q(x)
    D = q.D
    total = Fraction(0)
    for d in divisors(q.cond):
        total += moebius(d) * q(d) * Fraction(d) ** (r - 1) * sigma(q.cond // d, 2 * r - 1)
    return L_neg(D, 1 - r) * total


def g_table_q(r: int, prec: int) -> list[Fraction]:
    if r == 1:
        raise UnsupportedQMode("the weight 3/2 case over Q is excluded")
    return [h_coeff_q(r, N) for N in range(prec + 1)]
