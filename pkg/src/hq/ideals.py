"""Integral ideals of o_F in Hermite normal form.

An ideal is the Z-module Z*a + Z*(b + c*w) with c | a, c | b, 0 <= b < a.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable

from sympy import factorint

from hq.dirichlet import kronecker
from hq.field import FieldElt, RealQuadField

DEFAULT_FACTOR_BOUND = 10**12


class ZeroElement(ValueError):
    pass


class FactorizationOverflow(ValueError):
    pass


@dataclass(frozen=True)
class OIdeal:
    F: RealQuadField
    a: int
    b: int
    c: int

    @property
    def norm(self) -> int:
        return self.a * self.c

    def basis(self) -> tuple[FieldElt, FieldElt]:
        return self.F(self.a, 0), self.F(self.b, self.c)

    def contains(self, x: FieldElt) -> bool:
        if not x.is_integral():
            return False
        if x.b % self.c:
            return False
        k = x.b // self.c
        return (x.a - k * self.b) % self.a == 0

    def __contains__(self, x):
        return self.contains(x)

    def reduce(self, x: FieldElt) -> tuple[int, int]:
        """Canonical representative (i, j), 0 <= i < a, 0 <= j < c, of x mod the ideal."""
        k = x.b // self.c
        i = (x.a - k * self.b) % self.a
        return i, x.b - k * self.c

    def __mul__(self, other: "OIdeal") -> "OIdeal":
        gens = [x * y for x in self.basis() for y in other.basis()]
        return hnf(self.F, gens)

    def __pow__(self, e: int) -> "OIdeal":
        out = unit_ideal(self.F)
        for _ in range(e):
            out = out * self
        return out

    def conjugate(self) -> "OIdeal":
        return hnf(self.F, [x.conjugate() for x in self.basis()])

    def scale_down(self, m: int) -> "OIdeal | None":
        """The ideal (1/m)*I if integral, else None."""
        if self.a % m or self.b % m or self.c % m:
            return None
        return OIdeal(self.F, self.a // m, self.b // m, self.c // m)

    def divide(self, other: "OIdeal") -> "OIdeal | None":
        """Exact quotient I / J when J divides I, else None."""
        return (self * other.conjugate()).scale_down(other.norm)

    def divides(self, other: "OIdeal") -> bool:
        return other.divide(self) is not None

    def is_unit(self) -> bool:
        return self.a == 1

    def __str__(self):
        return f"[{self.a}, {self.b}+{self.c}*w]"

    def __repr__(self):
        return f"OIdeal(D={self.F.D}, {self})"


def hnf(F: RealQuadField, gens) -> OIdeal:
    """HNF of the Z-span of the given integral elements (assumed an ideal)."""
    vecs = [(int(g.a), int(g.b)) for g in gens]
    # combine to a single vector carrying the gcd of the w-coordinates
    c = 0
    pivot = (0, 0)
    for va, vb in vecs:
        if vb == 0:
            continue
        if c == 0:
            pivot, c = (va, vb), vb
            continue
        g, s, t = _xgcd(c, vb)
        pivot = (s * pivot[0] + t * va, g)
        c = g
    if c == 0:
        raise ZeroElement("zero ideal")
    if c < 0:
        pivot, c = (-pivot[0], -pivot[1]), -c
    a = 0
    for va, vb in vecs:
        a = math.gcd(a, va - (vb // c) * pivot[0])
    if a == 0:
        raise ZeroElement("degenerate lattice")
    return OIdeal(F, a, pivot[0] % a, c)


def _xgcd(a: int, b: int):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def unit_ideal(F: RealQuadField) -> OIdeal:
    return OIdeal(F, 1, 0, 1)


def ideal_from_element(x: FieldElt) -> OIdeal:
    if x.is_zero():
        raise ZeroElement("the zero element generates no ideal")
    x = x.integral()
    return hnf(x.F, [x, x * x.F.w])


def principal(F: RealQuadField, n: int) -> OIdeal:
    return ideal_from_element(F(n))


def parse_ideal(F: RealQuadField, s: str) -> OIdeal:
    """Parse "[a, b+c*w]"."""
    body = s.strip().lstrip("[").rstrip("]")
    first, second = body.split(",", 1)
    g1 = F.parse(first)
    g2 = F.parse(second)
    return hnf(F, [g1, g1 * F.w, g2, g2 * F.w])


# ---------------------------------------------------------------- primes


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime of o_F with residue characteristic p.

    ``root`` is the image of w in the residue field when the residue degree
    is 1.  ``tau`` lies in p * P^-1 but not in P^e; multiplying by tau/p
    lowers the P-valuation by one and keeps integrality everywhere.
    """

    ideal: OIdeal
    p: int
    f: int
    e: int
    root: int | None
    tau: FieldElt

    @property
    def norm(self) -> int:
        return self.p**self.f

    @property
    def F(self):
        return self.ideal.F

    def contains(self, x: FieldElt) -> bool:
        return self.ideal.contains(x)

    def valuation(self, x: FieldElt) -> int:
        if x.is_zero():
            raise ZeroElement("valuation of zero")
        x = x.integral()
        v = 0
        while self.ideal.contains(x):
            x = (x * self.tau).exact_div(self.p)
            v += 1
        return v

    def lower(self, x: FieldElt, times: int) -> FieldElt:
        """x * (tau/p)^times, integral when v_P(x) >= times."""
        for _ in range(times):
            x = (x * self.tau).exact_div(self.p)
        return x

    def residue(self, x: FieldElt) -> int:
        """Image in F_p for a degree-one prime."""
        return (int(x.a) + int(x.b) * self.root) % self.p

    def ideal_valuation(self, I: OIdeal) -> int:
        v = 0
        co = self._coideal()
        while True:
            J = (I * co).scale_down(self.p)
            if J is None:
                return v
            I = J
            v += 1

    def _coideal(self) -> OIdeal:
        return _coideal(self)

    def __str__(self):
        return str(self.ideal)


@lru_cache(maxsize=None)
def _coideal(P: PrimeIdeal) -> OIdeal:
    # p * P^{-1}, an integral ideal
    F = P.F
    return principal(F, P.p).divide(P.ideal)


def _roots_mod_p(F: RealQuadField, p: int) -> list[int]:
    t, n = F.omega_trace, F.omega_norm
    if p < 50:
        return [r for r in range(p) if (r * r - t * r + n) % p == 0]
    from sympy.ntheory.residue_ntheory import sqrt_mod

    s = sqrt_mod(F.D % p, p, all_roots=True)
    inv2 = pow(2, -1, p)
    return sorted({(t + r) * inv2 % p for r in s})


@lru_cache(maxsize=None)
def primes_above(F: RealQuadField, p: int) -> tuple[PrimeIdeal, ...]:
    """Primes of o_F over the rational prime p."""
    chi = kronecker(F.D, p)
    if chi == -1:
        P = principal(F, p)
        return (PrimeIdeal(P, p, 2, 1, None, F.one),)
    roots = _roots_mod_p(F, p)
    out = []
    for r in roots:
        I = OIdeal(F, p, (-r) % p, 1)
        out.append((r, I))
    if chi == 0:
        assert len(out) == 1
        r, I = out[0]
        tau = F(-r, 1)
        if principal(F, p).contains(tau):  # pragma: no cover
            tau = F(p, 0)
        return (PrimeIdeal(I, p, 1, 2, r, tau),)
    assert len(out) == 2
    (r1, I1), (r2, I2) = out
    # tau for I1 comes from I2 = p * I1^{-1}, avoiding I1
    return (
        PrimeIdeal(I1, p, 1, 1, r1, F(-r2, 1)),
        PrimeIdeal(I2, p, 1, 1, r2, F(-r1, 1)),
    )


def prime_factors_int(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> dict[int, int]:
    if n > bound:
        raise FactorizationOverflow(f"norm {n} exceeds the factoring bound {bound}")
    return {int(p): int(e) for p, e in factorint(n).items()}


_FACTOR_MEMO: dict = {}


def factor_ideal(I: OIdeal, bound: int = DEFAULT_FACTOR_BOUND, memo: bool = True):
    """List of (PrimeIdeal, exponent) pairs with product I."""
    key = (I, bound)
    if memo and key in _FACTOR_MEMO:
        return list(_FACTOR_MEMO[key])
    out = []
    rest = I
    for p in prime_factors_int(I.norm, bound):
        for P in primes_above(I.F, p):
            v = P.ideal_valuation(rest)
            if v:
                out.append((P, v))
                for _ in range(v):
                    rest = rest.divide(P.ideal)
    assert rest.is_unit()
    if memo:
        _FACTOR_MEMO[key] = tuple(out)
    return out


def factor_element(x: FieldElt, bound: int = DEFAULT_FACTOR_BOUND):
    return factor_ideal(ideal_from_element(x), bound)


def ideal_product(F: RealQuadField, fac) -> OIdeal:
    out = unit_ideal(F)
    for P, e in fac:
        out = out * P.ideal**e
    return out


def ideal_divisors(I: OIdeal, bound: int = DEFAULT_FACTOR_BOUND) -> list[OIdeal]:
    return [J for J, _ in divisors_with_factorization(I, bound)]


def divisors_with_factorization(I: OIdeal, bound: int = DEFAULT_FACTOR_BOUND):
    """Pairs (divisor, its factorization) for every divisor of I."""
    fac = factor_ideal(I, bound)
    out = []
    for exps in product(*[range(e + 1) for _, e in fac]):
        sub = [(P, k) for (P, _), k in zip(fac, exps) if k]
        out.append((ideal_product(I.F, sub), sub))
    return out


def moebius_F(I: OIdeal, bound: int = DEFAULT_FACTOR_BOUND) -> int:
    fac = factor_ideal(I, bound)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


IdealCharacter = Callable[[OIdeal], int]


def trivial_character(I: OIdeal) -> int:
    return 1


def sigma_F(I: OIdeal, k: int, chi: IdealCharacter = trivial_character,
            bound: int = DEFAULT_FACTOR_BOUND) -> Fraction:
    """sum over divisors r of I of N(r)^k chi(r)."""
    return Fraction(sum(J.norm**k * chi(J) for J in ideal_divisors(I, bound)))


def factorization_json(fac) -> list:
    return [[str(P.ideal), e] for P, e in fac]
