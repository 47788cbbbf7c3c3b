"""Values of partial zeta functions and Hecke L-functions of a real quadratic
field at non-positive integers, through Shintani's cone decomposition.

The totally positive quadrant modulo a totally positive unit e is covered by
the half-open cone {y1 * 1 + y2 * e : y1 > 0, y2 >= 0}.  For a lattice L
(an ideal) the cone is cut into subcones whose generators form a Z-basis of
L, so every coset rho + L meets the fundamental parallelepiped of a subcone
in exactly one point.  Shintani's formula turns the sum over a coset into a
finite sum of products of Bernoulli polynomials at that point; summing over
cosets with weights reduces to a few integer moments, computed with numpy.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from hq.cache import active_cache
from hq.dirichlet import L_neg, bernoulli_poly_coeffs, sigma, zeta_neg
from hq.field import FieldElt, RealQuadField
from hq.fquad import FQuadChar
from hq.ideals import (
    OIdeal,
    ZeroElement,
    factor_ideal,
    ideal_from_element,
    primes_above,
    principal,
    unit_ideal,
)


class OracleMismatch(AssertionError):
    """Shintani and Siegel values disagree: an internal error."""


class EnumerationBoundExceeded(RuntimeError):
    def __init__(self, bound: int, found: int, expected: int):
        super().__init__(f"norm bound {bound} reached with {found} of {expected} classes")
        self.bound = bound


class ParityVanishing(ValueError):
    """The archimedean type of the character forces the value to be 0."""


# ----------------------------------------------------------- Shintani terms


def _series_pow(v: FieldElt, vbar: FieldElt, n: int, prec: int) -> list[FieldElt]:
    """Coefficients of (v + u*vbar)^n in u, up to u^prec (n may be negative)."""
    F = v.F
    if n >= 0:
        return [math.comb(n, m) * v ** (n - m) * vbar**m if m <= n else F.zero for m in range(prec + 1)]
    # (v + u vbar)^n = v^n (1 + u r)^n with r = vbar / v
    r = vbar / v
    vn = v**n
    out = []
    for m in range(prec + 1):
        binom = Fraction(1)
        for i in range(m):
            binom = binom * (n - i) / (i + 1)
        out.append(vn * r**m * binom)
    return out


def _series_mul(a, b, prec):
    F = a[0].F
    out = [F.zero] * (prec + 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j in range(prec + 1 - i):
            out[i + j] = out[i + j] + x * b[j]
    return out


@lru_cache(maxsize=None)
def shintani_weights(v1: FieldElt, v2: FieldElt, k: int) -> tuple[Fraction, ...]:
    """T[l1] with zeta(1-k, cone, x) = sum_{l1+l2=2k} T[l1] B_l1(x1) B_l2(x2).

    T[l1] = ((k-1)!)^2 / 2 * Tr(c_l) / (l1! l2!), where c_l is the u^(k-1)
    coefficient of prod_i (v_i + u v_i')^(l_i - 1).
    """
    pre = Fraction(math.factorial(k - 1) ** 2, 2)
    out = []
    for l1 in range(2 * k + 1):
        l2 = 2 * k - l1
        s1 = _series_pow(v1, v1.conjugate(), l1 - 1, k - 1)
        s2 = _series_pow(v2, v2.conjugate(), l2 - 1, k - 1)
        c = _series_mul(s1, s2, k - 1)[k - 1]
        out.append(pre * c.trace() / (math.factorial(l1) * math.factorial(l2)))
    return tuple(out)


def cone_zeta_at(v1: FieldElt, v2: FieldElt, x1, x2, k: int) -> Fraction:
    """Regularized sum of N(eta)^(k-1) over eta = (x1+m1) v1 + (x2+m2) v2, m >= 0."""
    T = shintani_weights(v1, v2, k)
    from hq.dirichlet import bernoulli_poly

    return sum(
        (T[l1] * bernoulli_poly(l1, x1) * bernoulli_poly(2 * k - l1, x2) for l1 in range(2 * k + 1)),
        Fraction(0),
    )


# ------------------------------------------------------- cone decomposition


def _lcoords(L: OIdeal, y: FieldElt) -> tuple[int, int]:
    beta, r = divmod(int(y.b), L.c)
    alpha, r2 = divmod(int(y.a) - beta * L.b, L.a)
    if r or r2 or y.a != int(y.a):
        raise ValueError(f"{y} is not in {L}")
    return alpha, beta


def _from_lcoords(L: OIdeal, alpha: int, beta: int) -> FieldElt:
    return L.F(alpha * L.a + beta * L.b, beta * L.c)


def _det(x: FieldElt, y: FieldElt) -> Fraction:
    return x.a * y.b - x.b * y.a


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _primitive(L: OIdeal, y: FieldElt) -> FieldElt:
    a, b = _lcoords(L, y)
    g = math.gcd(a, b)
    return _from_lcoords(L, a // g, b // g)


@dataclass(frozen=True)
class ShintaniCone:
    """Half-open cone {y1 v1 + y2 v2 : y1 > 0, y2 >= 0} with v1, v2 a basis of ``lattice``."""

    v1: FieldElt
    v2: FieldElt
    lattice: OIdeal

    @property
    def det(self) -> int:
        return int(_det(self.v1, self.v2))

    def shift(self, rho: FieldElt) -> tuple[Fraction, Fraction]:
        """The unique point of rho + lattice in the cell, as (x1, x2) with 0 < x1 <= 1, 0 <= x2 < 1."""
        X1, X2 = self._int_coords(np.array([int(rho.a)]), np.array([int(rho.b)]))
        d = self.det
        return Fraction(int(X1[0]), d), Fraction(int(X2[0]), d)

    def shift_set(self, points: OIdeal) -> list[tuple[Fraction, Fraction]]:
        """Cell points of the coarser lattice ``points`` (which must contain ``lattice``)."""
        reps = [(i, j) for i in range(self.lattice.a) for j in range(self.lattice.c)]
        reps = [r for r in reps if points.contains(self.v1.F(*r))]
        return sorted(self.shift(self.v1.F(*r)) for r in reps)

    def _int_coords(self, i, j):
        v1, v2, d = self.v1, self.v2, self.det
        X1 = (int(v2.b) * i - int(v2.a) * j) % d
        X2 = (-int(v1.b) * i + int(v1.a) * j) % d
        X1 = np.where(X1 == 0, d, X1)
        return X1, X2

    def weighted_sum(self, i, j, weights, k: int) -> Fraction:
        """sum over cosets rho = i + j w of weight * zeta(1-k, cone, shift(rho))."""
        d = self.det
        X1, X2 = self._int_coords(i, j)
        m = _moments(X1, X2, weights, 2 * k, d)
        T = shintani_weights(self.v1, self.v2, k)
        total = Fraction(0)
        for l1 in range(2 * k + 1):
            if not T[l1]:
                continue
            l2 = 2 * k - l1
            b1 = bernoulli_poly_coeffs(l1)
            b2 = bernoulli_poly_coeffs(l2)
            acc = Fraction(0)
            for p in range(l1 + 1):
                for q in range(l2 + 1):
                    acc += b1[p] * b2[q] * Fraction(m[p][q], d ** (p + q))
            total += T[l1] * acc
        return total


def _moments(X1, X2, w, top: int, d: int):
    """m[p][q] = sum w X1^p X2^q for p + q <= top, exact."""
    n = int(np.abs(w).sum()) if len(w) else 0
    safe = n * float(d) ** top < 2.0**62
    if safe:
        X1 = X1.astype(np.int64)
        X2 = X2.astype(np.int64)
        w = w.astype(np.int64)
    else:
        X1 = X1.astype(object)
        X2 = X2.astype(object)
        w = w.astype(object)
    m = [[0] * (top + 1) for _ in range(top + 1)]
    wp = w
    for p in range(top + 1):
        wq = wp
        for q in range(top + 1 - p):
            m[p][q] = int(wq.sum())
            wq = wq * X2
        wp = wp * X1
    return m


@lru_cache(maxsize=None)
def cone_decomposition(L: OIdeal, eps: FieldElt) -> tuple[ShintaniCone, ...]:
    """Subcones of {y1 + y2 eps : y1 > 0, y2 >= 0}, generators Z-bases of L.

    Each step takes the next ray v with det_L(u, v) = 1 inside the cone and
    as close to the far ray as possible (a Hirzebruch-Jung expansion).
    """
    nL = L.norm
    u = _primitive(L, L.F(L.a))
    q = _primitive(L, eps * L.a)

    def det_L(x, y):
        return Fraction(_det(x, y), nL)

    cones = []
    while det_L(u, q) != 1:
        alpha, beta = _lcoords(L, u)
        _, s, t = _xgcd(alpha, beta)
        # alpha*s + beta*t = 1  ->  det((alpha,beta),(-t,s)) = 1
        v0 = _from_lcoords(L, -t, s)
        duq = det_L(u, q)
        tt = -((det_L(v0, q)) // duq)
        v = v0 + u * tt
        assert det_L(u, v) == 1 and 0 <= det_L(v, q) < duq
        cones.append(ShintaniCone(u, v, L))
        u = v
    cones.append(ShintaniCone(u, q, L))
    return tuple(cones)


def weighted_cone_sum(L: OIdeal, eps: FieldElt, i, j, weights, k: int) -> Fraction:
    """sum_rho weight(rho) * sum_{eta in rho + L, eta in the cone of (1, eps)} N(eta)^(k-1)."""
    return sum(
        (c.weighted_sum(i, j, weights, k) for c in cone_decomposition(L, eps)), Fraction(0)
    )


# --------------------------------------------------------------- oracles


def siegel_zeta(D: int, s: int) -> Fraction:
    """zeta_F(-1) and zeta_F(-3) from the divisor-sum formulas."""
    if s not in (-1, -3):
        raise ValueError("Siegel formulas are used for s = -1, -3 only")
    r, c = (1, Fraction(1, 60)) if s == -1 else (3, Fraction(1, 120))
    tot = 0
    b = -math.isqrt(D)
    while b * b <= D:
        if b * b < D and (D - b * b) % 4 == 0:
            tot += sigma((D - b * b) // 4, r)
        b += 1
    return c * tot


def zeta_F_via_Q(D: int, s: int) -> Fraction:
    """zeta_F(s) = zeta(s) L(s, chi_D)."""
    return zeta_neg(s) * L_neg(D, s)


# ------------------------------------------------------- principal ideals


def find_generator(I: OIdeal, totally_positive: bool = False) -> FieldElt | None:
    """An element generating I (totally positive if asked), or None."""
    F = I.F
    eps = F.fundamental_unit
    N = I.norm
    e1 = float(eps.embeddings()[0])
    B = math.sqrt(N) * e1 * 1.0001 + 1
    wt = F.w.embeddings()
    span = abs(wt[0] - wt[1]) * I.c
    nmax = int(2 * B / span) + 1
    a, b, c = I.a, I.b, I.c
    for n in range(-nmax, nmax + 1):
        y1 = n * (b + c * wt[0])
        lo = math.floor((-B - y1) / a) - 1
        hi = math.ceil((B - y1) / a) + 1
        for m in range(lo, hi + 1):
            x = F(m * a + n * b, n * c)
            if x.is_zero():
                continue
            nx = x.norm()
            if nx == N or nx == -N:
                gens = _all_signs(x)
                if not totally_positive:
                    return gens[0]
                for g in gens:
                    if g.is_totally_positive():
                        return g
    return None


def _all_signs(x: FieldElt) -> list[FieldElt]:
    eps = x.F.fundamental_unit
    return [x, -x, x * eps, -(x * eps)]


# ---------------------------------------------------------- ray classes


def ideals_of_norm(F: RealQuadField, n: int) -> list[OIdeal]:
    from hq.dirichlet import factor_int

    out = [unit_ideal(F)]
    for p, e in factor_int(n).items():
        Ps = primes_above(F, p)
        new = []
        for I in out:
            for parts in _prime_power_splits(Ps, p, e):
                J = I
                for P, k in parts:
                    J = J * P.ideal**k
                new.append(J)
        out = new
    return out


def _prime_power_splits(Ps, p, e):
    if len(Ps) == 1:
        P = Ps[0]
        if e % P.f:
            return []
        return [[(P, e // P.f)]]
    P1, P2 = Ps
    return [[(P1, i), (P2, e - i)] for i in range(e + 1)]


def _unit_image(F: RealQuadField, M: OIdeal, with_infinity: bool):
    """Images of the unit group in (o/M)^x x signs, as a set."""
    eps = F.fundamental_unit
    seen = set()

    def key(u):
        r = M.reduce(u)
        return (r, (u.sign1(), u.sign2()) if with_infinity else None)

    start = key(F.one)
    seen.add(start)
    gens = [eps, -F.one]
    frontier = [F.one]
    while frontier:
        nxt = []
        for u in frontier:
            for g in gens:
                v = u * g
                kv = key(v)
                if kv not in seen:
                    seen.add(kv)
                    nxt.append(v)
        frontier = nxt
    return seen


def _phi(M: OIdeal) -> int:
    out = 1
    for P, e in factor_ideal(M):
        out *= P.norm ** (e - 1) * (P.norm - 1)
    return out


@dataclass
class RayClassContext:
    F: RealQuadField
    modulus: OIdeal
    with_infinity: bool
    reps: list[OIdeal]
    eps_plus: FieldElt
    eps_m: FieldElt
    _sign_units: list = field(default_factory=list, repr=False)

    def equivalent(self, I: OIdeal, J: OIdeal) -> bool:
        """I ~ J in the ray class group (both coprime to the modulus)."""
        prod = I * J.conjugate()
        g = find_generator(prod)
        if g is None:
            return False
        target = self.modulus.reduce(self.F(J.norm))
        for u in self._sign_units:
            eta = g * u
            if self.with_infinity and not eta.is_totally_positive():
                continue
            if self.modulus.reduce(eta) == target:
                return True
        return False

    def class_of(self, I: OIdeal) -> int:
        for idx, R in enumerate(self.reps):
            if self.equivalent(I, R):
                return idx
        raise ValueError(f"{I} is not coprime to the modulus")

    def __len__(self):
        return len(self.reps)


def wide_class_number(F: RealQuadField) -> int:
    """Class number from ideals below the Minkowski bound."""
    bound = math.isqrt(F.D // 4) + 1
    reps: list[OIdeal] = []
    for n in range(1, bound + 1):
        for I in ideals_of_norm(F, n):
            if not any(find_generator(I * R.conjugate()) is not None for R in reps):
                reps.append(I)
    return len(reps)


def _unit_list(F: RealQuadField, M: OIdeal, with_infinity: bool) -> list[FieldElt]:
    """Units u = +-eps^n covering every class of the unit image."""
    eps = F.fundamental_unit
    out = []
    seen = set()
    u = F.one
    for _ in range(10**6):
        for s in (u, -u):
            key = (M.reduce(s), (s.sign1(), s.sign2()) if with_infinity else None)
            if key not in seen:
                seen.add(key)
                out.append(s)
        u = u * eps
        if M.reduce(u) == M.reduce(F.one) and (u.sign1(), u.sign2()) == (1, 1):
            break
    return out


def ray_classes(F: RealQuadField, modulus: OIdeal | None = None, with_infinity: bool = True,
                bound: int = 10**5) -> RayClassContext:
    if modulus is None:
        modulus = unit_ideal(F)
    eps_p = F.totally_positive_unit
    e, u = 1, eps_p
    while modulus.reduce(u) != modulus.reduce(F.one):
        u = u * eps_p
        e += 1
    image = _unit_image(F, modulus, with_infinity)
    expected = wide_class_number(F) * _phi(modulus) * (4 if with_infinity else 1) // len(image)
    ctx = RayClassContext(F, modulus, with_infinity, [], eps_p, u, _unit_list(F, modulus, with_infinity))
    n = 1
    while len(ctx.reps) < expected:
        if n > bound:
            raise EnumerationBoundExceeded(bound, len(ctx.reps), expected)
        for I in ideals_of_norm(F, n):
            if not _coprime_to(I, modulus):
                continue
            if not any(ctx.equivalent(I, R) for R in ctx.reps):
                ctx.reps.append(I)
        n += 1
    return ctx


def _coprime_to(I: OIdeal, M: OIdeal) -> bool:
    if M.is_unit() or I.is_unit():
        return True
    if math.gcd(I.norm, M.norm) == 1:
        return True
    return all(P.ideal_valuation(I) == 0 for P, _ in factor_ideal(M))


# ------------------------------------------------------------ partial zeta


def _cosets_in(sub: OIdeal, L: OIdeal):
    """Integer arrays (i, j) of the residues of o mod L that lie in sub (L inside sub)."""
    i, j = np.meshgrid(np.arange(L.a, dtype=np.int64), np.arange(L.c, dtype=np.int64), indexing="ij")
    i, j = i.ravel(), j.ravel()
    ok = (j % sub.c == 0)
    k = j // sub.c
    ok &= ((i - k * sub.b) % sub.a == 0)
    return i[ok], j[ok]


def _key(*parts) -> str:
    return "|".join(str(p) for p in parts)


def partial_zeta_neg(ctx: RayClassContext, class_index: int, s: int, rep: OIdeal | None = None) -> Fraction:
    """zeta(s, C) at s = 1 - k for the ray class C of ctx.reps[class_index].

    Ideals a in C correspond to eta = totally positive elements of cbar
    with eta = N(c) mod the modulus, via a * cbar = (eta); the units
    fixing this set are the powers of ctx.eps_m.
    """
    k = 1 - s
    if k < 1:
        raise ValueError("s must be a non-positive integer")
    c = ctx.reps[class_index] if rep is None else rep
    F = ctx.F
    cache = active_cache()
    key = _key(F.D, ctx.modulus, "+" if ctx.with_infinity else "", c, s)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if not ctx.with_infinity:
        raise NotImplementedError("partial zeta values are computed for narrow ray classes")
    cbar = c.conjugate()
    L = cbar * ctx.modulus
    i, j = _cosets_in(cbar, L)
    target = ctx.modulus.reduce(F(c.norm))
    wts = np.array(
        [1 if ctx.modulus.reduce(F(int(a), int(b))) == target else 0 for a, b in zip(i, j)],
        dtype=np.int64,
    )
    val = weighted_cone_sum(L, ctx.eps_m, i, j, wts, k) * Fraction(c.norm) ** (1 - k)
    cache.put(key, val)
    return val


def zeta_F_neg(F: RealQuadField, s: int, check: bool = True) -> Fraction:
    """zeta_F(s) for s = 1 - k <= 0, through the narrow class group."""
    k = 1 - s
    if k < 1:
        raise ValueError("s must be a non-positive integer")
    if k % 2:
        return Fraction(0)
    ctx = ray_classes(F)
    val = sum((partial_zeta_neg(ctx, c, s) for c in range(len(ctx))), Fraction(0))
    if check and s in (-1, -3):
        oracle = siegel_zeta(F.D, s)
        if oracle != val:
            raise OracleMismatch(f"zeta_F({s}) for D={F.D}: Shintani {val}, Siegel {oracle}")
    return val


# ------------------------------------------------------------ Hecke L


def _psi_digest(arr: np.ndarray) -> str:
    return hashlib.sha1(np.ascontiguousarray(arr, dtype=np.int8).tobytes()).hexdigest()[:16]


@lru_cache(maxsize=None)
def narrow_reps(F: RealQuadField, avoid: int = 1) -> tuple[OIdeal, ...]:
    """Narrow class representatives with norm coprime to ``avoid``."""
    ctx = ray_classes(F)
    out = []
    for R in ctx.reps:
        if math.gcd(R.norm, avoid) == 1:
            out.append(R)
            continue
        n = 1
        while True:
            found = None
            if math.gcd(n, avoid) == 1:
                for I in ideals_of_norm(F, n):
                    if ctx.equivalent(I, R):
                        found = I
                        break
            if found is not None:
                out.append(found)
                break
            n += 1
    return tuple(out)


def parity_vanishes(chi: FQuadChar, k: int) -> bool:
    if chi.square_class_flag:
        return k % 2 == 1
    if chi.is_totally_odd():
        return k % 2 == 0
    if chi.is_totally_even():
        return k % 2 == 1
    return True


def hecke_L_neg(F: RealQuadField, chi: FQuadChar, s: int, chi_prime=None, strict: bool = False) -> Fraction:
    """L_F(s, chi_x * chi') at s = 1 - k, chi' a narrow class character (default trivial).

    The sum over ideals is split by narrow class [c]; inside a class the
    character is chi(cbar) * chi_x((eta)), and chi_x((eta)) for totally
    positive eta is the product of local symbols at the primes of the
    relative discriminant, a function of eta mod disc.
    """
    k = 1 - s
    if k < 1:
        raise ValueError("s must be a non-positive integer")
    if parity_vanishes(chi, k):
        if strict:
            raise ParityVanishing(f"L_F({s}, chi_{chi.x}) vanishes by parity")
        return Fraction(0)
    if chi.square_class_flag:
        if chi_prime is None:
            return zeta_F_neg(F, s)
        ctx = ray_classes(F)
        return sum(
            (chi_prime(R) * partial_zeta_neg(ctx, c, s) for c, R in enumerate(ctx.reps)), Fraction(0)
        )
    Dc = chi.disc
    eps = F.totally_positive_unit
    total = Fraction(0)
    cache = active_cache()
    for c in narrow_reps(F, Dc.norm):
        cbar = c.conjugate()
        L = cbar * Dc
        i, j = _cosets_in(cbar, L)
        psi = chi.psi_array(i, j)
        key = _key(F.D, Dc, "psi:" + _psi_digest(psi), c, s)
        part = cache.get(key)
        if part is None:
            part = weighted_cone_sum(L, eps, i, j, psi, k) * Fraction(c.norm) ** (1 - k)
            cache.put(key, part)
        w = chi(cbar)
        if chi_prime is not None:
            w *= chi_prime(c)
        total += w * part
    return total


def hecke_L_by_classes(F: RealQuadField, chi: FQuadChar, s: int, bound: int = 10**5) -> Fraction:
    """Reference path: sum over ray classes mod disc * oo of chi(rep) * partial zeta."""
    ctx = ray_classes(F, chi.disc, True, bound)
    return sum(
        (chi(R) * partial_zeta_neg(ctx, c, s) for c, R in enumerate(ctx.reps)), Fraction(0)
    )
