"""Truncated q-expansions with exact rational coefficients, the classical
forms of weight 2k+1 on Gamma_0(4) with character chi_{-4}, the diagonal
restriction of Hilbert q-expansions, and the checks built on them."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from hq.dirichlet import L_neg, sigma_chi, sigma_chi_prime
from hq.field import FieldElt, RealQuadField, RestrictionUnit
from hq.report import RelationReport


class NotPositiveDefinite(ArithmeticError):
    """eta -> Tr(eta^2 / delta) is not positive definite."""


class QSeries:
    """sum_{n <= prec} c_n q^n with exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = [Fraction(c) for c in coeffs]
        if not self.coeffs:
            raise ValueError("a series needs at least the constant term")

    @property
    def prec(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, prec: int) -> "QSeries":
        return cls([0] * (prec + 1))

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, prec: int) -> "QSeries":
        return QSeries(self.coeffs[: prec + 1])

    def _lift(self, other):
        if isinstance(other, QSeries):
            return other
        return QSeries([other] + [0] * self.prec)

    def __add__(self, other):
        other = self._lift(other)
        p = min(self.prec, other.prec)
        return QSeries([self.coeffs[i] + other.coeffs[i] for i in range(p + 1)])

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            c = Fraction(other)
            return QSeries([c * a for a in self.coeffs])
        p = min(self.prec, other.prec)
        out = [Fraction(0)] * (p + 1)
        for i, a in enumerate(self.coeffs[: p + 1]):
            if not a:
                continue
            for j in range(p + 1 - i):
                out[i + j] += a * other.coeffs[j]
        return QSeries(out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = QSeries([1] + [0] * self.prec)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        p = min(self.prec, other.prec)
        return self.coeffs[: p + 1] == other.coeffs[: p + 1]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        return f"QSeries(prec={self.prec}, [{head}{', ...' if self.prec >= 8 else ''}])"


# ------------------------------------------------------------ classical forms


def theta_Q(prec: int) -> QSeries:
    c = [0] * (prec + 1)
    m = 0
    while m * m <= prec:
        c[m * m] += 1 if m == 0 else 2
        m += 1
    return QSeries(c)


def theta_sq(prec: int) -> QSeries:
    return theta_Q(prec) ** 2


def _check_kappa(kappa: int):
    if kappa < 1:
        raise ValueError("kappa must be >= 1")


def eisenstein_E(kappa: int, prec: int) -> QSeries:
    """1/2 L(-2 kappa, chi_{-4}) + sum sigma_{2kappa, chi_{-4}}(n) q^n."""
    _check_kappa(kappa)
    c = [L_neg(-4, -2 * kappa) / 2]
    c += [sigma_chi(n, 2 * kappa) for n in range(1, prec + 1)]
    return QSeries(c)


def eisenstein_F(kappa: int, prec: int) -> QSeries:
    """sum sigma'_{2kappa, chi_{-4}}(n) q^n."""
    _check_kappa(kappa)
    return QSeries([0] + [sigma_chi_prime(n, 2 * kappa) for n in range(1, prec + 1)])


def s5_series(prec: int) -> QSeries:
    """s(n) = 1/4 sum_{a^2 + b^2 = n} (a + b i)^4."""
    c = [Fraction(0)] * (prec + 1)
    r = math.isqrt(prec)
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            n = a * a + b * b
            if n <= prec:
                # real part of (a + bi)^4; imaginary parts cancel over conjugates
                c[n] += a**4 - 6 * a * a * b * b + b**4
    return QSeries([x / 4 for x in c])


def dim_formulas(kappa: int) -> dict:
    """Dimensions of M_{2k+1}(Gamma_0(4), chi_{-4}) and its cusp subspace."""
    dim_M = 0 if kappa < 0 else 1 + kappa
    dim_S = 0 if kappa < 2 else kappa - 1
    return {"dim_M": dim_M, "dim_S": dim_S}


# ------------------------------------------------------------- restriction


def restrict(table) -> QSeries:
    """Coefficient n = sum of table entries on the line Tr(xi/delta) = n."""
    c = [Fraction(0)] * (table.prec + 1)
    c[0] = Fraction(table.constant)
    for xi, h in table.coeffs.items():
        n = int(table.unit.index(xi))
        if 0 < n <= table.prec:
            c[n] += h
    return QSeries(c)


def square_form(unit: RestrictionUnit) -> tuple[int, int, int]:
    """(A, B, C) with Tr((x + y w)^2 / delta) = A x^2 + B x y + C y^2."""
    F = unit.F

    def ell(e):
        return unit.index(e)

    A = ell(F.one)
    C = ell(F.w * F.w)
    B = ell(F.w * 2)
    for v in (A, B, C):
        if Fraction(v).denominator != 1:  # pragma: no cover
            raise NotPositiveDefinite("non-integral square form")
    A, B, C = int(A), int(B), int(C)
    if A <= 0 or 4 * A * C - B * B <= 0:
        raise NotPositiveDefinite(f"form ({A}, {B}, {C}) is not positive definite")
    return A, B, C


def _ellipse_points(form, prec: int):
    """(x, y, value) for all integer points with form value <= prec."""
    A, B, C = form
    disc = 4 * A * C - B * B
    ymax = math.isqrt(4 * A * prec // disc) + 1
    for y in range(-ymax, ymax + 1):
        # A x^2 + B x y + C y^2 <= prec
        rad = B * B * y * y - 4 * A * (C * y * y - prec)
        if rad < 0:
            continue
        s = math.isqrt(rad)
        lo = (-B * y - s) // (2 * A) - 1
        hi = (-B * y + s) // (2 * A) + 1
        for x in range(lo, hi + 1):
            v = A * x * x + B * x * y + C * y * y
            if v <= prec:
                yield x, y, v


def restrict_theta_F(F: RealQuadField, unit: RestrictionUnit, prec: int) -> QSeries:
    """Coefficient n = #{eta in o_F : Tr(eta^2 / delta) = n}."""
    c = [0] * (prec + 1)
    for _, _, v in _ellipse_points(square_form(unit), prec):
        c[v] += 1
    return QSeries(c)


def rep_numbers(F: RealQuadField, unit: RestrictionUnit, k: int, prec: int) -> QSeries:
    """k-th power of the restricted theta series."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return restrict_theta_F(F, unit, prec) ** k


def hilbert_rep_counts(F: RealQuadField, unit: RestrictionUnit, k: int, prec: int) -> Counter:
    """r_{F,k}(xi) for every xi with Tr(xi/delta) <= prec, keyed by (a, b) of xi.

    Counts k-tuples of elements of o_F whose squares sum to xi.
    """
    squares = Counter()
    for x, y, _ in _ellipse_points(square_form(unit), prec):
        e = F(x, y) * F(x, y)
        squares[(int(e.a), int(e.b))] += 1
    level = {(a, b): int(unit.index(F(a, b))) for a, b in squares}
    counts = Counter({(0, 0): 1})
    for _ in range(k):
        nxt = Counter()
        for (a, b), m in counts.items():
            base = int(unit.index(F(a, b)))
            for (c, d), n in squares.items():
                if base + level[(c, d)] <= prec:
                    nxt[(a + c, b + d)] += m * n
        counts = nxt
    return counts


def line_sums(F: RealQuadField, unit: RestrictionUnit, counts: Counter, prec: int) -> list[int]:
    out = [0] * (prec + 1)
    for (a, b), m in counts.items():
        out[int(unit.index(F(a, b)))] += m
    return out


# ------------------------------------------------------------ decomposition


@dataclass
class Decomposition:
    kappa: int
    c_E: Fraction
    c_F: Fraction
    residual: QSeries
    c_S: Fraction | None = None
    verdict: str | None = None  # "zero", "multiple_of_S5", "failed", or None (no verdict)
    notes: dict = field(default_factory=dict)

    def reassemble(self) -> QSeries:
        p = self.residual.prec
        return self.c_E * eisenstein_E(self.kappa, p) + self.c_F * eisenstein_F(self.kappa, p) + self.residual


def decompose(series: QSeries, kappa: int) -> Decomposition:
    """Split off the Eisenstein part of a form in M_{2kappa+1}(Gamma_0(4), chi_{-4}).

    c_E comes from the constant term.  For kappa = 1 the cusp space is zero
    and c_F comes from q^1.  For kappa = 2 the space is spanned by E, F and
    S5, so (c_E, c_F, c_S) is solved from q^0, q^1, q^2 and the residual
    must be c_S * S5 on every computed coefficient.  For kappa >= 3 c_F is
    read off q^1 and no statement about the residual is made.
    """
    _check_kappa(kappa)
    p = series.prec
    if p < kappa + 2:
        raise ValueError(f"precision {p} is below kappa + 2 = {kappa + 2}")
    E = eisenstein_E(kappa, p)
    Fs = eisenstein_F(kappa, p)
    c_E = series[0] / E[0]
    rest = series - c_E * E
    if kappa == 2:
        S = s5_series(p)
        # rest[1] = c_F F1 + c_S S1, rest[2] = c_F F2 + c_S S2
        det = Fs[1] * S[2] - Fs[2] * S[1]
        c_F = (rest[1] * S[2] - rest[2] * S[1]) / det
        c_S = (Fs[1] * rest[2] - Fs[2] * rest[1]) / det
        residual = rest - c_F * Fs
        verdict = "multiple_of_S5" if residual == c_S * S else "failed"
        return Decomposition(kappa, c_E, c_F, residual, c_S, verdict)
    c_F = rest[1] / Fs[1]
    residual = rest - c_F * Fs
    if kappa == 1:
        return Decomposition(kappa, c_E, c_F, residual, None, "zero" if residual.is_zero() else "failed")
    if residual[0] != 0:  # pragma: no cover - c_E is fitted to the constant term
        return Decomposition(kappa, c_E, c_F, residual, None, "failed")
    return Decomposition(kappa, c_E, c_F, residual, None, None)


# --------------------------------------------------------------- verifiers


def theorem_c_E(F: RealQuadField, kappa: int) -> Fraction:
    """2 zeta_F(1 - 2 kappa) / L(-2 kappa, chi_{-4}), from Bernoulli numbers and Siegel sums."""
    from hq.shintani import siegel_zeta, zeta_F_via_Q

    s = 1 - 2 * kappa
    z = siegel_zeta(F.D, s) if s in (-1, -3) else zeta_F_via_Q(F.D, s)
    return 2 * z / L_neg(-4, -2 * kappa)


def verify_theta_identity(F: RealQuadField, unit: RestrictionUnit, prec: int) -> RelationReport:
    rep = RelationReport("theta_restriction", {"D": F.D, "prec": prec})
    lhs = restrict_theta_F(F, unit, prec)
    rhs = theta_sq(prec)
    for n in range(prec + 1):
        rep.add(n, lhs[n], rhs[n])
    return rep


def verify_sum_of_squares(F: RealQuadField, unit: RestrictionUnit, k_max: int, prec: int) -> RelationReport:
    """Line sums of brute-force r_{F,k} against r_{2k}(n) = coefficients of theta^(2k)."""
    rep = RelationReport("sum_of_squares", {"D": F.D, "k_max": k_max, "prec": prec})
    th = theta_Q(prec)
    for k in range(1, k_max + 1):
        sums = line_sums(F, unit, hilbert_rep_counts(F, unit, k, prec), prec)
        target = th ** (2 * k)
        for n in range(prec + 1):
            rep.add(n, sums[n], target[n])
            rep.rows[-1].tag = f"k={k}"
    return rep


def verify_corollary_k1(F: RealQuadField, unit: RestrictionUnit, prec: int, table=None) -> RelationReport:
    """Line sums of H_1 against -4 zeta_F(-1) (sigma_{2,chi_{-4}}(n) - sigma'_{2,chi_{-4}}(n))."""
    from hq.cohen import g_table
    from hq.shintani import zeta_F_neg

    if table is None:
        table = g_table(F, 1, unit, prec)
    series = restrict(table)
    z = zeta_F_neg(F, -1)
    rep = RelationReport("corollary_k1", {"D": F.D, "prec": prec})
    rep.notes["constant"] = -4 * z
    for n in range(1, prec + 1):
        rep.add(n, series[n], -4 * z * (sigma_chi(n, 2) - sigma_chi_prime(n, 2)))
    return rep


def verify_theorem_consts(F: RealQuadField, unit: RestrictionUnit, kappa: int, prec: int,
                          table=None) -> RelationReport:
    """Decompose the restricted series and compare with the predicted Eisenstein part.

    Rows: coefficient n of the restricted series against its reassembly
    from (c_E, c_F, cusp part).  The notes carry c_E against its
    first-principles value, c_F against (-1)^kappa c_E (kappa <= 2) and the
    cusp verdict.
    """
    from hq.cohen import g_table

    if table is None:
        table = g_table(F, kappa, unit, prec)
    series = restrict(table)
    dec = decompose(series, kappa)
    expected = theorem_c_E(F, kappa)
    rep = RelationReport("theorem_consts", {"D": F.D, "kappa": kappa, "prec": prec})
    E = eisenstein_E(kappa, prec)
    Fs = eisenstein_F(kappa, prec)
    cusp = dec.c_S * s5_series(prec) if dec.c_S is not None else (
        QSeries.zero(prec) if kappa == 1 else dec.residual
    )
    model = dec.c_E * E + dec.c_F * Fs + cusp
    for n in range(prec + 1):
        rep.add(n, series[n], model[n])
    rep.notes.update({"c_E": dec.c_E, "c_E_expected": expected, "c_F": dec.c_F,
                      "cusp_verdict": dec.verdict or "not certified (kappa >= 3)"})
    failed = dec.c_E != expected or dec.verdict == "failed"
    if kappa <= 2:
        rep.notes["c_F_expected"] = (-1) ** kappa * expected
        failed = failed or dec.c_F != (-1) ** kappa * expected
    if dec.c_S is not None:
        rep.notes["c_S"] = dec.c_S
    if failed:
        rep.notes["verdict_failed"] = True
    return rep
