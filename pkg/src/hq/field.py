"""Exact arithmetic in real quadratic fields Q(sqrt D).

Elements are stored in the basis {1, w} of the ring of integers, where
w = (1 + sqrt D)/2 for D = 1 mod 4 and w = sqrt(D)/2 for D = 0 mod 4.
Coefficients are ints, or Fractions for intermediate quotients.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property


class NotFundamentalDiscriminant(ValueError):
    pass


class InexactDivision(ArithmeticError):
    pass


class NoNegativeNormUnit(ValueError):
    pass


def is_squarefree(m: int) -> bool:
    m = abs(m)
    if m == 0:
        return False
    p = 2
    while p * p <= m:
        if m % (p * p) == 0:
            return False
        if m % p == 0:
            m //= p
        p += 1
    return True


def is_fundamental_discriminant(d: int) -> bool:
    """True for discriminants of quadratic fields (and for d = 1)."""
    if d == 1:
        return True
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def _sign_of(r, s, D: int) -> int:
    """Sign of r + s*sqrt(D) for rationals r, s, computed exactly."""
    if s == 0:
        return (r > 0) - (r < 0)
    if r == 0 or (r > 0) == (s > 0):
        return 1 if (r > 0 or (r == 0 and s > 0)) else -1
    # opposite signs: compare r^2 with s^2 D
    c = r * r - s * s * D
    if c == 0:
        return 0
    return (1 if r > 0 else -1) if c > 0 else (1 if s > 0 else -1)


@dataclass(frozen=True)
class RealQuadField:
    D: int

    def __post_init__(self):
        if self.D <= 4 or not is_fundamental_discriminant(self.D):
            raise NotFundamentalDiscriminant(f"{self.D} is not a fundamental discriminant > 4")

    @property
    def omega_kind(self) -> str:
        return "half(1+sqrtD)" if self.D % 4 == 1 else "half(sqrtD)"

    @property
    def omega_trace(self) -> int:
        return 1 if self.D % 4 == 1 else 0

    @property
    def omega_norm(self) -> int:
        return (1 - self.D) // 4 if self.D % 4 == 1 else -self.D // 4

    def __call__(self, a, b=0) -> "FieldElt":
        return FieldElt(self, a, b)

    @property
    def zero(self):
        return FieldElt(self, 0, 0)

    @property
    def one(self):
        return FieldElt(self, 1, 0)

    @property
    def w(self):
        return FieldElt(self, 0, 1)

    @property
    def sqrtD(self) -> "FieldElt":
        return FieldElt(self, -1, 2) if self.D % 4 == 1 else FieldElt(self, 0, 2)

    def parse(self, s: str) -> "FieldElt":
        return parse_elt(self, s)

    @cached_property
    def fundamental_unit(self) -> "FieldElt":
        return fundamental_unit(self)

    @cached_property
    def totally_positive_unit(self) -> "FieldElt":
        eps = self.fundamental_unit
        return eps * eps if eps.norm() == -1 else eps

    def __repr__(self):
        return f"RealQuadField({self.D})"


def make_field(D: int) -> RealQuadField:
    return RealQuadField(int(D))


class FieldElt:
    """The element a + b*w of a real quadratic field."""

    __slots__ = ("F", "a", "b")

    def __init__(self, F: RealQuadField, a, b=0):
        self.F = F
        self.a = a
        self.b = b

    def _coerce(self, y):
        if isinstance(y, FieldElt):
            if y.F.D != self.F.D:
                raise ValueError("elements of different fields")
            return y
        return FieldElt(self.F, y, 0)

    def __add__(self, y):
        y = self._coerce(y)
        return FieldElt(self.F, self.a + y.a, self.b + y.b)

    __radd__ = __add__

    def __sub__(self, y):
        y = self._coerce(y)
        return FieldElt(self.F, self.a - y.a, self.b - y.b)

    def __rsub__(self, y):
        return self._coerce(y) - self

    def __neg__(self):
        return FieldElt(self.F, -self.a, -self.b)

    def __mul__(self, y):
        if not isinstance(y, FieldElt):
            return FieldElt(self.F, self.a * y, self.b * y)
        F = self.F
        a, b, c, d = self.a, self.b, y.a, y.b
        bd = b * d
        return FieldElt(F, a * c - bd * F.omega_norm, a * d + b * c + bd * F.omega_trace)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return (self.F.one / self) ** (-n)
        result, base = self.F.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "FieldElt":
        return FieldElt(self.F, self.a + self.b * self.F.omega_trace, -self.b)

    def trace(self):
        return 2 * self.a + self.b * self.F.omega_trace

    def norm(self):
        F = self.F
        return self.a * self.a + self.a * self.b * F.omega_trace + self.b * self.b * F.omega_norm

    def __truediv__(self, y):
        if not isinstance(y, FieldElt):
            y = Fraction(y)
            if y == 0:
                raise ZeroDivisionError
            return FieldElt(self.F, Fraction(self.a) / y, Fraction(self.b) / y)
        n = y.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero element")
        num = self * y.conjugate()
        return FieldElt(self.F, Fraction(num.a) / n, Fraction(num.b) / n)

    def __rtruediv__(self, y):
        return self._coerce(y) / self

    def exact_div(self, y) -> "FieldElt":
        """Quotient in the ring of integers; raises InexactDivision otherwise."""
        q = self / y
        if not q.is_integral():
            raise InexactDivision(f"{self} is not divisible by {y}")
        return FieldElt(self.F, int(q.a), int(q.b))

    def divides(self, y) -> bool:
        return (self._coerce(y) / self).is_integral()

    def is_integral(self) -> bool:
        return Fraction(self.a).denominator == 1 and Fraction(self.b).denominator == 1

    def integral(self) -> "FieldElt":
        if not self.is_integral():
            raise InexactDivision(f"{self} is not integral")
        return FieldElt(self.F, int(self.a), int(self.b))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def _sqrt_coords(self):
        # a + b w = r + s sqrt(D)
        t = self.F.omega_trace
        return self.a + Fraction(self.b * t, 2), Fraction(self.b, 2)

    def sign1(self) -> int:
        """Sign under the embedding sending sqrt D to the positive root."""
        r, s = self._sqrt_coords()
        return _sign_of(r, s, self.F.D)

    def sign2(self) -> int:
        r, s = self._sqrt_coords()
        return _sign_of(r, -s, self.F.D)

    def embeddings(self) -> tuple[float, float]:
        r, s = self._sqrt_coords()
        rt = math.sqrt(self.F.D)
        return float(r) + float(s) * rt, float(r) - float(s) * rt

    def is_totally_positive(self) -> bool:
        return self.trace() > 0 and self.norm() > 0

    def __eq__(self, y):
        if isinstance(y, FieldElt):
            return self.F.D == y.F.D and self.a == y.a and self.b == y.b
        return self.b == 0 and self.a == y

    def __hash__(self):
        return hash((self.F.D, self.a, self.b))

    def __iter__(self):
        yield self.a
        yield self.b

    def __str__(self):
        return format_elt(self)

    def __repr__(self):
        return f"FieldElt(D={self.F.D}, {format_elt(self)})"


def is_totally_positive(x: FieldElt) -> bool:
    return x.is_totally_positive()


def format_elt(x: FieldElt) -> str:
    b = x.b
    sign = "-" if b < 0 else "+"
    return f"{x.a}{sign}{abs(b)}*w"


_ELT_RE = re.compile(r"^\s*([+-]?\s*\d+(?:/\d+)?)?\s*(?:([+-])\s*(\d+(?:/\d+)?)?\s*\*?\s*w)?\s*$")


def parse_elt(F: RealQuadField, s: str) -> FieldElt:
    """Parse "a+b*w" (also "a", "a-w", "b*w")."""
    text = s.replace(" ", "")
    if re.fullmatch(r"[+-]?(\d+(/\d+)?)?\*?w", text):
        sign = -1 if text.startswith("-") else 1
        coef = text.lstrip("+-").rstrip("w").rstrip("*")
        return FieldElt(F, 0, sign * _num(coef or "1"))
    m = _ELT_RE.match(text)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise ValueError(f"cannot parse field element {s!r}")
    a = _num(m.group(1)) if m.group(1) else 0
    b = 0
    if m.group(2):
        b = _num(m.group(3) or "1")
        if m.group(2) == "-":
            b = -b
    return FieldElt(F, a, b)


def _num(t: str):
    v = Fraction(t)
    return int(v) if v.denominator == 1 else v


def fundamental_unit(F: RealQuadField) -> FieldElt:
    """Fundamental unit > 1, from the continued fraction of w."""
    D = F.D
    rt = math.isqrt(D)
    # w = (P + sqrt D)/Q with Q | D - P^2
    P, Q = D % 2, 2
    # convergents p/q of w, with p_{-1}/q_{-1} = 1/0 and p_{-2}/q_{-2} = 0/1
    h1, h2, k1, k2 = 1, 0, 0, 1
    while True:
        a = (P + rt) // Q
        h1, h2 = a * h1 + h2, h1
        k1, k2 = a * k1 + k2, k1
        u = FieldElt(F, h1, -k1)
        if abs(u.norm()) == 1:
            break
        P = a * Q - P
        Q = (D - P * P) // Q
    cands = [u, -u, u.conjugate(), -u.conjugate()]
    big = [c for c in cands if (c - 1).sign1() > 0]
    return big[0]


@dataclass(frozen=True)
class RestrictionUnit:
    F: RealQuadField
    alpha: int
    beta: int

    @property
    def u(self) -> FieldElt:
        return FieldElt(self.F, self.alpha, self.beta)

    @property
    def delta(self) -> FieldElt:
        return self.u * self.F.sqrtD

    def index(self, x: FieldElt):
        """The line index a*beta - b*alpha, equal to Tr(x/delta)."""
        return x.a * self.beta - x.b * self.alpha


def find_restriction_unit(F: RealQuadField) -> RestrictionUnit:
    eps = F.fundamental_unit
    if eps.norm() != -1:
        raise NoNegativeNormUnit(
            f"D={F.D}: fundamental unit {eps} has norm +1, no unit of norm -1 exists"
        )
    u = eps if eps.trace() > 0 else -eps
    unit = RestrictionUnit(F, int(u.a), int(u.b))
    assert unit.delta.is_totally_positive()
    return unit


_SQUARES_MOD4: dict[int, frozenset] = {}


def _squares_mod4(F: RealQuadField) -> frozenset:
    s = _SQUARES_MOD4.get(F.D)
    if s is None:
        out = set()
        for lam in (F(0), F(1), F(0, 1), F(1, 1)):
            sq = lam * lam
            out.add((sq.a % 4, sq.b % 4))
        s = _SQUARES_MOD4[F.D] = frozenset(out)
    return s


def is_square_mod4(x: FieldElt) -> bool:
    """Whether x = lambda^2 mod 4 o_F for some integral lambda."""
    x = x.integral()
    return (x.a % 4, x.b % 4) in _squares_mod4(x.F)


def _tp_interval(F, x0: FieldElt, u: FieldElt):
    """Integers t with x0 + t*u totally positive, for u with u1 > 0 > u2."""
    e1, e2 = x0.embeddings()
    u1, u2 = u.embeddings()
    lo, hi = -e1 / u1, e2 / (-u2)
    if lo >= hi + 2:
        return []
    ts = range(math.floor(lo) - 2, math.ceil(hi) + 3)
    good = [t for t in ts if (x0 + u * t).is_totally_positive()]
    if not good:
        return []
    t0, t1 = good[0], good[-1]
    while (x0 + u * (t0 - 1)).is_totally_positive():
        t0 -= 1
    while (x0 + u * (t1 + 1)).is_totally_positive():
        t1 += 1
    return list(range(t0, t1 + 1))


def enumerate_line(unit: RestrictionUnit, n: int, include_zero: bool = False) -> list[FieldElt]:
    """All totally positive xi with Tr(xi/delta) = n, ordered along the line."""
    if n < 0:
        raise ValueError("n must be >= 0")
    F = unit.F
    if n == 0:
        return [F.zero] if include_zero else []
    # particular solution of a*beta - b*alpha = n
    g, s, t = _ext_gcd(unit.beta, -unit.alpha)
    assert g == 1
    x0 = FieldElt(F, s * n, t * n)
    return [x0 + unit.u * t for t in _tp_interval(F, x0, unit.u)]


def _ext_gcd(a: int, b: int):
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0
