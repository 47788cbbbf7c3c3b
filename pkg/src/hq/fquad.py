"""Quadratic extensions F(sqrt x)/F: relative discriminant, conductor and
the quadratic character chi_x on ideals.

Local questions at primes over 2 are settled by exhaustive search in the
finite rings o_F / P^m; these rings have at most a few hundred elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from hq.dirichlet import factor_int, fundamental_decomposition, kronecker
from hq.field import FieldElt, RealQuadField
from hq.ideals import (
    DEFAULT_FACTOR_BOUND,
    OIdeal,
    PrimeIdeal,
    ZeroElement,
    factor_ideal,
    ideal_from_element,
    ideal_product,
    primes_above,
    unit_ideal,
)


class LocalSearchFailed(ArithmeticError):
    """The local norm group search did not reach index two (a bug)."""


# ------------------------------------------------------------ local rings


def _mul(F: RealQuadField, x, y):
    a1, b1 = x
    a2, b2 = y
    t, n = F.omega_trace, F.omega_norm
    bb = b1 * b2
    return a1 * a2 - n * bb, a1 * b2 + a2 * b1 + t * bb


def _red(M: OIdeal, x):
    a, b = x
    k = b // M.c
    return (a - k * M.b) % M.a, b - k * M.c


def _residues(M: OIdeal):
    return [(i, j) for i in range(M.a) for j in range(M.c)]


@lru_cache(maxsize=None)
def _power(P: PrimeIdeal, m: int) -> OIdeal:
    return P.ideal**m


@lru_cache(maxsize=None)
def _squares(P: PrimeIdeal, m: int) -> frozenset:
    M = _power(P, m)
    return frozenset(_red(M, _mul(P.F, y, y)) for y in _residues(M))


def is_square_mod(P: PrimeIdeal, x: FieldElt, m: int) -> bool:
    """Is the integral element x congruent to a square mod P^m?"""
    if m <= 0:
        return True
    M = _power(P, m)
    return _red(M, (int(x.a), int(x.b))) in _squares(P, m)


def square_depth(P: PrimeIdeal, x: FieldElt, top: int) -> int:
    """Largest j <= top with x a square mod P^j."""
    j = 0
    while j < top and is_square_mod(P, x, j + 1):
        j += 1
    return j


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def residue_symbol(P: PrimeIdeal, x: FieldElt) -> int:
    """Quadratic residue symbol of an integral x in o/P, P odd."""
    if P.f == 1:
        return _legendre(P.residue(x), P.p)
    # x^((p^2-1)/2) in F_{p^2} equals the Legendre symbol of the norm
    return _legendre(int(x.norm()), P.p)


# ---------------------------------------------------------- square class


def integral_rep(x: FieldElt) -> FieldElt:
    """x times the square of its denominator: integral, same square class."""
    den = math.lcm(Fraction(x.a).denominator, Fraction(x.b).denominator)
    return x * (den * den)


def _rational_sqrt(q: Fraction):
    q = Fraction(q)
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def sqrt_elt(x: FieldElt) -> FieldElt | None:
    """A square root of x in F, or None."""
    F = x.F
    if x.is_zero():
        return x
    # y^2 = x forces y^2 - t y + m = 0 with m = +-sqrt N(x), t^2 = Tr(x) + 2m
    r = _rational_sqrt(x.norm())
    if r is None:
        return None
    for m in (r, -r):
        t = _rational_sqrt(x.trace() + 2 * m)
        if t is None:
            continue
        if t == 0:
            c = _rational_sqrt(Fraction(-m) / F.D)
            cands = [] if c is None else [F.sqrtD * c]
        else:
            cands = [(x + m) / t]
        for y in cands:
            if y * y == x:
                return y
    return None


# -------------------------------------------------------- dyadic analysis


def _dyadic_exponent(P: PrimeIdeal, v: int, x0: FieldElt) -> int:
    """Exponent of P in the relative discriminant; x0 is x with even powers stripped."""
    e2 = 2 * P.e
    if v % 2:
        return e2 + 1
    t = square_depth(P, x0, e2 + 1)
    if t >= e2:
        return 0
    d = e2 + 1 - t
    if d % 2:  # pragma: no cover - a unit's square defect below 2e is odd
        raise LocalSearchFailed(f"odd exponent {d} at {P}")
    return d


def _strip(P: PrimeIdeal, x: FieldElt) -> tuple[int, FieldElt]:
    """(v, x') with x' = x * (square) and v_P(x') = v mod 2."""
    v = P.valuation(x)
    return v, P.lower(x, v - v % 2)


def _unit_residues(P: PrimeIdeal, d: int):
    M = _power(P, d)
    return M, [r for r in _residues(M) if not P.ideal.contains(P.F(*r))]


@lru_cache(maxsize=None)
def _norm_units(P: PrimeIdeal, d: int, xs: tuple[int, int], vs: int) -> frozenset:
    """Residues mod P^d of unit norms from F_P(sqrt xs).

    xs has P-valuation vs in {0, 1}.  Unit norms form an index-two subgroup
    of the unit group.  It contains the unit squares and every unit value of
    Y^2 - xs Z^2 (also after removing an even power of P).
    """
    F = P.F
    M, units = _unit_residues(P, d)
    target = len(units) // 2
    group = {_red(M, _mul(F, u, u)) for u in units}
    group = _closure(F, M, group)
    if len(group) == target:
        return frozenset(group)
    for k in range(P.e + 1):
        Mk = _power(P, d + 2 * k)
        reps = _residues(Mk)
        for Y in reps:
            Y2 = _mul(F, Y, Y)
            for Z in reps:
                xz = _mul(F, xs, _mul(F, Z, Z))
                val = F(Y2[0] - xz[0], Y2[1] - xz[1])
                if val.is_zero() or P.valuation(val) != 2 * k:
                    continue
                u = P.lower(val, 2 * k)
                r = _red(M, (int(u.a), int(u.b)))
                if r in group:
                    continue
                group = _closure(F, M, group | {r})
                if len(group) == target:
                    return frozenset(group)
    raise LocalSearchFailed(f"norm group search at {P} stalled at {len(group)} of {target}")


def _closure(F, M, gens: set) -> set:
    group = set(gens)
    frontier = list(group)
    base = list(gens)
    while frontier:
        nxt = []
        for g in frontier:
            for h in base:
                r = _red(M, _mul(F, g, h))
                if r not in group:
                    group.add(r)
                    nxt.append(r)
        frontier = nxt
    return group


# ------------------------------------------------------------- the character


@dataclass(frozen=True)
class LocalPart:
    """Data of chi_x at a prime P dividing the relative discriminant."""

    P: PrimeIdeal
    exponent: int
    xs: FieldElt  # x with even P-powers stripped
    vs: int  # its P-valuation, 0 or 1

    @property
    def dyadic(self) -> bool:
        return self.P.p == 2

    def modulus(self) -> OIdeal:
        return _power(self.P, self.exponent)

    def norm_units(self) -> frozenset:
        """Unit norm residues mod P^exponent (dyadic primes only)."""
        if not self.dyadic:
            raise ValueError("norm groups are tabulated only at primes over 2")
        # the local square class of xs is fixed by xs mod P^(d + 2e)
        key = _red(_power(self.P, self.exponent + 2 * self.P.e), (int(self.xs.a), int(self.xs.b)))
        return _norm_units(self.P, self.exponent, key, self.vs)

    def value(self, eta: FieldElt) -> int:
        """Local symbol (x, eta)_P for an integral eta; 0 when eta lies in P."""
        if self.P.contains(eta):
            return 0
        if not self.dyadic:
            return residue_symbol(self.P, eta)
        r = _red(self.modulus(), (int(eta.a), int(eta.b)))
        return 1 if r in self.norm_units() else -1


@dataclass(frozen=True)
class FQuadChar:
    """chi_x for F(sqrt x)/F, with cond^2 * disc = (x).

    ``x`` is stored as an integral representative of the square class of
    the input.  The conductor is integral except possibly at primes over 2
    (when x is ramified there but not divisible by enough of 2); it is
    stored as ``cond / cond_den`` with ``cond`` integral and ``cond_den``
    a power of 2, so that cond^2 * disc = (x * cond_den^2).
    """

    x: FieldElt
    disc: OIdeal
    cond: OIdeal
    square_class_flag: bool
    cond_den: int = 1
    local: tuple = field(default=(), compare=False, repr=False)
    bound: int = field(default=DEFAULT_FACTOR_BOUND, compare=False, repr=False)

    @property
    def F(self) -> RealQuadField:
        return self.x.F

    def at_prime(self, P: PrimeIdeal) -> int:
        if self.square_class_flag:
            return 1
        for lp in self.local:
            if lp.P == P:
                return 0
        v, xs = _strip(P, self.x)
        if P.p == 2:
            return 1 if is_square_mod(P, xs, 2 * P.e + 1) else -1
        return residue_symbol(P, xs)

    def __call__(self, I: OIdeal) -> int:
        return chi_eval(self, I)

    def is_totally_odd(self) -> bool:
        return self.x.sign1() < 0 and self.x.sign2() < 0

    def is_totally_even(self) -> bool:
        return self.x.sign1() > 0 and self.x.sign2() > 0

    def psi(self, eta: FieldElt) -> int:
        """chi_x((eta)) for totally positive integral eta; 0 if eta shares a factor with disc."""
        out = 1
        for lp in self.local:
            out *= lp.value(eta)
            if out == 0:
                return 0
        return out

    def psi_array(self, i, j) -> np.ndarray:
        """Vectorized psi on elements i + j*w (integer arrays)."""
        i = np.asarray(i, dtype=np.int64)
        j = np.asarray(j, dtype=np.int64)
        out = np.ones(i.shape, dtype=np.int8)
        for lp in self.local:
            out *= _local_table_lookup(lp, i, j)
        return out


def _local_table_lookup(lp: LocalPart, i, j) -> np.ndarray:
    P = lp.P
    if not lp.dyadic and P.f == 1:
        p = P.p
        table = np.array([_legendre(r, p) for r in range(p)], dtype=np.int8)
        return table[(i % p + (j % p) * P.root) % p]
    if not lp.dyadic:
        p = P.p
        F = P.F
        table = np.array([_legendre(r, p) for r in range(p)], dtype=np.int8)
        ip, jp = i % p, j % p
        nm = (ip * ip + F.omega_trace * ip * jp + F.omega_norm * jp * jp) % p
        return table[nm]
    M = lp.modulus()
    k = j // M.c
    ii = (i - k * M.b) % M.a
    jj = j - k * M.c
    table = np.zeros(M.a * M.c, dtype=np.int8)
    good = lp.norm_units()
    for a in range(M.a):
        for b in range(M.c):
            if P.contains(P.F(a, b)):
                continue
            table[a * M.c + b] = 1 if (a, b) in good else -1
    return table[ii * M.c + jj]


@lru_cache(maxsize=4096)
def _relative_discriminant(F: RealQuadField, a, b, bound: int) -> FQuadChar:
    x = F(a, b)
    root = sqrt_elt(x)
    if root is not None:
        return FQuadChar(x, unit_ideal(F), ideal_from_element(integral_rep(root)), True, 1, (), bound)
    fac = dict(factor_ideal(ideal_from_element(x), bound))
    for P in primes_above(F, 2):
        fac.setdefault(P, 0)
    disc_fac, cond_exp, local = [], {}, []
    for P, v in fac.items():
        vs, xs = _strip(P, x) if v else (0, x)
        vs %= 2
        if P.p == 2:
            d = _dyadic_exponent(P, vs, xs)
        else:
            d = v % 2
        if d:
            disc_fac.append((P, d))
            local.append(LocalPart(P, d, xs, vs))
        cond_exp[P] = (v - d) // 2
    # shift by a power of 2 when the conductor is fractional at 2
    k = 0
    for P, c in cond_exp.items():
        if c < 0:
            k = max(k, -(c // P.e))
    for P in primes_above(F, 2):
        cond_exp[P] += k * P.e
    cond_fac = [(P, c) for P, c in cond_exp.items() if c]
    return FQuadChar(
        x, ideal_product(F, disc_fac), ideal_product(F, cond_fac), False, 2**k, tuple(local), bound
    )


def relative_discriminant(F: RealQuadField, x: FieldElt, bound: int = DEFAULT_FACTOR_BOUND) -> FQuadChar:
    if x.is_zero():
        raise ZeroElement("x must be nonzero")
    x = integral_rep(x)
    return _relative_discriminant(F, int(x.a), int(x.b), bound)


def chi_eval(chi: FQuadChar, I: OIdeal) -> int:
    if chi.square_class_flag:
        return 1
    out = 1
    for P, e in factor_ideal(I, chi.bound):
        out *= chi.at_prime(P) ** e
        if out == 0:
            return 0
    return out


# ------------------------------------------------------------------ Q mode


@dataclass(frozen=True)
class QuadCharQ:
    """The same construction over Q: x = sign * cond^2 * disc."""

    x: int
    disc: int
    cond: int

    @property
    def D(self) -> int:
        """Signed fundamental discriminant (1 for squares)."""
        return self.disc * (1 if self.x > 0 else -1)

    def __call__(self, n: int) -> int:
        out = 1
        for p, e in factor_int(n).items():
            out *= self.at_prime(p) ** e
        return out

    def at_prime(self, p: int) -> int:
        if self.disc % p == 0:
            return 0
        x = self.x
        while x % (p * p) == 0:
            x //= p * p
        if p == 2:
            return 1 if x % 8 == 1 else -1
        return _legendre(x, p)


def relative_discriminant_q(x: int) -> QuadCharQ:
    """Odd p: exponent v mod 2.  p = 2: square-defect search mod 2^j, j <= 3."""
    if x == 0:
        raise ZeroElement("x must be nonzero")
    fac = factor_int(abs(x))
    fac.setdefault(2, 0)
    disc, cond = 1, 1
    for p, v in fac.items():
        if p == 2:
            xs = x // 4 ** (v // 2)
            if v % 2:
                d = 3
            else:
                t = 0
                while t < 3 and any((y * y - xs) % 2 ** (t + 1) == 0 for y in range(2 ** (t + 1))):
                    t += 1
                d = 0 if t >= 2 else 3 - t
        else:
            d = v % 2
        disc *= p**d
        cond *= p ** ((v - d) // 2)
    return QuadCharQ(x, disc, cond)


def q_mode_agrees(x: int) -> bool:
    """Compare with the fundamental-discriminant factorization x = f^2 D."""
    q = relative_discriminant_q(x)
    if x % 4 in (0, 1):
        f, D = fundamental_decomposition(x)
        if (q.cond, q.D) != (f, D):
            return False
        return all(q(p) == kronecker(D, p) for p in range(1, 60))
    return q.cond**2 * q.disc == abs(x)
