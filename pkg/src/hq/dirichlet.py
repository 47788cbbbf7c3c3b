"""Arithmetic over Q: Kronecker symbols, generalized Bernoulli numbers,
Dirichlet L-values at non-positive integers, Hurwitz and Cohen class
numbers, and checks of the classical class number relations."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from math import comb

from hq.report import RelationReport


class BadDiscriminant(ValueError):
    pass


class BadDiscriminantParity(ValueError):
    pass


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d/n) for a discriminant d = 0, 1 mod 4."""
    if d % 4 not in (0, 1):
        raise BadDiscriminant(f"{d} is not 0 or 1 mod 4")
    if n == 0:
        return 1 if abs(d) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if d < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if d % 2 == 0:
            return 0
        if v % 2 and d % 8 in (3, 5):
            result = -result
    # Jacobi symbol (d/n) for odd n
    a = d % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """B_k with B_1 = -1/2."""
    if k == 0:
        return Fraction(1)
    if k == 1:
        return Fraction(-1, 2)
    if k % 2:
        return Fraction(0)
    s = sum(comb(k + 1, j) * bernoulli(j) for j in range(k))
    return -s / (k + 1)


@lru_cache(maxsize=None)
def bernoulli_poly_coeffs(k: int) -> tuple[Fraction, ...]:
    """Coefficients c_0..c_k of B_k(x) = sum c_i x^i."""
    return tuple(comb(k, i) * bernoulli(k - i) for i in range(k + 1))


def bernoulli_poly(k: int, x) -> Fraction:
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(bernoulli_poly_coeffs(k)):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def generalized_bernoulli(k: int, d: int) -> Fraction:
    """B_{k, chi_d} = f^(k-1) sum_{a=1}^{f} chi_d(a) B_k(a/f), f = |d|."""
    f = abs(d)
    return f ** (k - 1) * sum(
        kronecker(d, a) * bernoulli_poly(k, Fraction(a, f)) for a in range(1, f + 1)
    )


def L_neg(d: int, s: int) -> Fraction:
    """L(s, chi_d) at s = 1 - k <= 0; d = 1 gives the Riemann zeta function."""
    k = 1 - s
    if k < 1:
        raise ValueError("s must be a non-positive integer")
    return -generalized_bernoulli(k, d) / k


def zeta_neg(s: int) -> Fraction:
    return L_neg(1, s)


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def factor_int(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def moebius(n: int) -> int:
    f = factor_int(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def sigma(n, r: int) -> Fraction:
    """Divisor power sum, with sigma_r(0) = zeta(-r)/2 and 0 off the integers."""
    n = Fraction(n)
    if n.denominator != 1 or n < 0:
        return Fraction(0)
    if n == 0:
        return zeta_neg(-r) / 2
    return Fraction(sum(d**r for d in divisors(int(n))))


def sigma_chi(n: int, k: int, d: int = -4) -> int:
    """sum_{e | n} e^k chi_d(e)."""
    return sum(e**k * kronecker(d, e) for e in divisors(n))


def sigma_chi_prime(n: int, k: int, d: int = -4) -> int:
    """sum_{e | n} e^k chi_d(n/e)."""
    return sum(e**k * kronecker(d, n // e) for e in divisors(n))


def fundamental_decomposition(m: int) -> tuple[int, int]:
    """Write m = f^2 * D with D a fundamental discriminant or 1.

    Raises ValueError if m is not 0 or 1 mod 4 (or m = 0).
    """
    if m == 0 or m % 4 not in (0, 1):
        raise ValueError(f"{m} is not a discriminant")
    sign = -1 if m < 0 else 1
    fac = factor_int(abs(m))
    core, f = sign, 1
    for p, e in fac.items():
        f *= p ** (e // 2)
        if e % 2:
            core *= p
    if core % 4 != 1:
        core *= 4
        f //= 2
    return f, core


def hurwitz_H(N: int) -> Fraction:
    if N == 0:
        return Fraction(-1, 12)
    if N < 0 or (-N) % 4 not in (0, 1):
        return Fraction(0)
    f, D = fundamental_decomposition(-N)
    total = sum(moebius(d) * kronecker(D, d) * sigma(f // d, 1) for d in divisors(f))
    return L_neg(D, 0) * total


def cohen_H(r: int, N: int) -> Fraction:
    """Cohen's generalized class number H(r, N)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if N == 0:
        return zeta_neg(1 - 2 * r)
    if N < 0:
        return Fraction(0)
    m = (-1) ** r * N
    if m % 4 not in (0, 1):
        return Fraction(0)
    f, D = fundamental_decomposition(m)
    total = sum(
        moebius(d) * kronecker(D, d) * d ** (r - 1) * sigma(f // d, 2 * r - 1)
        for d in divisors(f)
    )
    return L_neg(D, 1 - r) * total


def lambda1(N: int) -> Fraction:
    """Half of sum_{d | N} min(d, N/d)."""
    return Fraction(sum(min(d, N // d) for d in divisors(N)), 2)


def lambda1_literal(N: int) -> int:
    return sum(min(d, N // d) for d in divisors(N))


def _sq_range(N: int):
    s = math.isqrt(N) if N >= 0 else -1
    return range(-s, s + 1)


def kronecker_relation(N: int) -> tuple[Fraction, Fraction]:
    lhs = 2 * sigma(N, 1)
    rhs = sum(hurwitz_H(4 * N - s * s) for s in _sq_range(4 * N)) + 2 * lambda1(N)
    return lhs, rhs


def eichler_relation(N: int) -> tuple[Fraction, Fraction]:
    lhs = sigma(N, 1) / 3
    rhs = sum(hurwitz_H(N - s * s) for s in _sq_range(N)) + lambda1(N)
    return lhs, rhs


def cohen_relation_2(N: int) -> tuple[Fraction, Fraction]:
    rhs = -Fraction(1, 5) * sum(sigma(Fraction(N - s * s, 4), 1) for s in _sq_range(N))
    if math.isqrt(N) ** 2 == N:
        rhs -= Fraction(N, 10)
    return cohen_H(2, N), rhs


def cohen_relation_4(N: int) -> tuple[Fraction, Fraction]:
    rhs = sum(sigma(Fraction(N - s * s, 4), 3) for s in _sq_range(N))
    return cohen_H(4, N), rhs


def verify_classical(N_max: int) -> list[RelationReport]:
    """Kronecker (1..N_max), Eichler (odd N), Cohen's two identities (0..N_max)."""
    if N_max < 1:
        raise ValueError("N_max must be >= 1")
    params = {"N_max": N_max}
    kron = RelationReport("kronecker", params)
    eich = RelationReport("eichler", params)
    c2 = RelationReport("cohen_H2", params)
    c4 = RelationReport("cohen_H4", params)
    for N in range(1, N_max + 1):
        kron.add(N, *kronecker_relation(N))
        if N % 2:
            eich.add(N, *eichler_relation(N))
    for N in range(0, N_max + 1):
        c2.add(N, *cohen_relation_2(N))
        c4.add(N, *cohen_relation_4(N))
    return [kron, eich, c2, c4]


def cohen_congruence_series(r: int, D: int, prec: int, odd_s: bool = False):
    """sum_N (sum_s H(r, (N - s^2)/|D|)) q^N, or the odd-s variant with 4N - s^2."""
    from hq.qseries import QSeries

    if D % 4 not in (0, 1):
        raise BadDiscriminant(f"{D} is not 0 or 1 mod 4")
    if (-1) ** (r + 1) * D != abs(D):
        raise BadDiscriminantParity(f"(-1)^(r+1) D != |D| for r={r}, D={D}")
    if prec < 1:
        raise ValueError("prec must be >= 1")
    aD = abs(D)
    coeffs = []
    for N in range(prec + 1):
        M = 4 * N if odd_s else N
        total = Fraction(0)
        for s in _sq_range(M):
            if odd_s and s % 2 == 0:
                continue
            num = M - s * s
            if num % aD == 0:
                total += cohen_H(r, num // aD)
        coeffs.append(total)
    return QSeries(coeffs)
