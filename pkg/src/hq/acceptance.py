"""The acceptance checks, shared by ``hq selftest`` and the test suite.

Each check returns a CheckResult; ``detail`` says what was compared.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from hq.cohen import g_table, h_coeff_q
from hq.dirichlet import L_neg, cohen_H, verify_classical
from hq.field import find_restriction_unit, make_field
from hq.fquad import relative_discriminant
from hq.ideals import ideal_from_element, primes_above
from hq.qseries import (
    decompose,
    dim_formulas,
    hilbert_rep_counts,
    line_sums,
    restrict,
    restrict_theta_F,
    s5_series,
    theorem_c_E,
    verify_corollary_k1,
    verify_sum_of_squares,
    verify_theta_identity,
)
from hq.shintani import (
    hecke_L_neg,
    partial_zeta_neg,
    ray_classes,
    siegel_zeta,
    zeta_F_neg,
)


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.detail}; {self.seconds:.1f}s)"


def _field(D):
    F = make_field(D)
    return F, find_restriction_unit(F)


def check_theta() -> tuple[bool, str]:
    bad = []
    for D in (5, 8, 13):
        F, U = _field(D)
        if not verify_theta_identity(F, U, 500).passed:
            bad.append(D)
    return not bad, f"coefficients 0..500 for D=5,8,13; failing D: {bad or 'none'}"


def check_sum_of_squares() -> tuple[bool, str]:
    bad = []
    for D in (5, 8, 13):
        F, U = _field(D)
        rep = verify_sum_of_squares(F, U, 3, 100)
        if not rep.passed:
            bad.append((D, rep.n_fail))
    return not bad, f"kappa<=3, n<=100, D=5,8,13; failures: {bad or 'none'}"


def check_zeta_oracles() -> tuple[bool, str]:
    bad = []
    for D in (5, 8, 13, 17, 24, 29):
        F = make_field(D)
        for s in (-1, -3):
            v = zeta_F_neg(F, s, check=False)
            if v != siegel_zeta(D, s):
                bad.append((D, s))
    named = (
        zeta_F_neg(make_field(5), -1) == Fraction(1, 30)
        and zeta_F_neg(make_field(5), -3) == Fraction(1, 60)
        and zeta_F_neg(make_field(8), -1) == Fraction(1, 12)
    )
    return not bad and named, f"Shintani vs Siegel for 6 fields at s=-1,-3; mismatches: {bad or 'none'}"


def check_corollary() -> tuple[bool, str]:
    bad = []
    for D in (5, 8, 13):
        F, U = _field(D)
        rep = verify_corollary_k1(F, U, 50)
        if not rep.passed:
            bad.append((D, rep.n_fail))
    return not bad, f"n=1..50 for D=5,8,13; failures: {bad or 'none'}"


_TABLES: dict = {}


def _d5_table(kappa, prec):
    key = (kappa, prec)
    if key not in _TABLES:
        F, U = _field(5)
        _TABLES[key] = g_table(F, kappa, U, prec)
    return _TABLES[key]


def check_example_k1() -> tuple[bool, str]:
    dec = decompose(restrict(_d5_table(1, 50)), 1)
    ok = dec.c_E == Fraction(-2, 15) and dec.c_F == Fraction(2, 15) and dec.residual.is_zero()
    return ok, f"c_E={dec.c_E}, c_F={dec.c_F}, residual zero through 50: {dec.residual.is_zero()}"


def check_example_k2() -> tuple[bool, str]:
    dec = decompose(restrict(_d5_table(2, 30)), 2)
    S = s5_series(30)
    res_ok = dec.residual == Fraction(1, 25) * S
    F = make_field(5)
    first = 2 * siegel_zeta(5, -3) / L_neg(-4, -4)
    ok = (
        dec.c_E == Fraction(1, 75)
        and dec.c_F == Fraction(1, 75)
        and res_ok
        and first == Fraction(1, 75)
        and theorem_c_E(F, 2) == first
    )
    return ok, f"c_E={dec.c_E}, c_F={dec.c_F}, residual=(1/25)S5: {res_ok}, 2zeta_F(-3)/L(-4,chi_-4)={first}"


def check_l_rows() -> tuple[bool, str]:
    F = make_field(5)
    r1 = restrict(_d5_table(1, 50))
    L_a = hecke_L_neg(F, relative_discriminant(F, F.parse("-2-w")), 0)
    L_b = hecke_L_neg(F, relative_discriminant(F, F(-4)), 0)
    L_c = hecke_L_neg(F, relative_discriminant(F, F.parse("5+w")), -1)
    row5 = restrict(_d5_table(2, 30))[5]
    a = r1[2] == L_a == Fraction(2, 5)
    b = r1[4] == 2 * L_b == 2
    c = L_c == 8
    detail = (
        f"n=2: {r1[2]} = L_F(0,chi_(-2-w)) = {L_a} [{'ok' if a else 'bad'}]; "
        f"n=4: {r1[4]} = 2*{L_b} [{'ok' if b else 'bad'}]; "
        f"kappa=2 n=5 row total {row5}, L_F(-1,chi_(5+w)) computed {L_c}, expected 8 [{'ok' if c else 'bad'}]"
    )
    return a and b and c, detail


def check_classical() -> tuple[bool, str]:
    reps = verify_classical(300)
    kron, eich, c2, c4 = reps
    ok = kron.passed and eich.passed
    ok = ok and all(r.equal for r in c2.rows if r.n <= 100) and all(r.equal for r in c4.rows if r.n <= 100)
    return ok, "; ".join(f"{r.relation}: {r.n_pass} pass, {r.n_fail} fail" for r in reps)


def check_dimensions() -> tuple[bool, str]:
    table = {k: dim_formulas(k) for k in range(-2, 11)}
    ok = all(table[k]["dim_M"] == (0 if k < 0 else 1 + k) for k in table)
    ok = ok and all(table[k]["dim_S"] == (0 if k < 2 else k - 1) for k in table)
    ok = ok and all(table[k]["dim_M"] - table[k]["dim_S"] == 2 for k in table if k >= 2)
    return ok, "dim_M, dim_S for -2<=kappa<=10; dim_M - dim_S = 2 for kappa>=2"


def check_properties(seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    notes = []
    ok = True
    # restriction of products of Hilbert theta series equals products of restrictions
    for D in (5, 8, 13):
        F, U = _field(D)
        th = restrict_theta_F(F, U, 60)
        for k in (1, 2, 3):
            if line_sums(F, U, hilbert_rep_counts(F, U, k, 60), 60) != [int(c) for c in (th**k)]:
                ok = False
                notes.append(f"ring map D={D} k={k}")
    # square-class invariance and the conductor round trip
    for D in (5, 8, 12, 13):
        F = make_field(D)
        for _ in range(60):
            x = F(rng.randint(-40, 40), rng.randint(-40, 40))
            t = F(rng.randint(-6, 6), rng.randint(-6, 6))
            if x.is_zero() or t.is_zero():
                continue
            c = relative_discriminant(F, x)
            if c.cond * c.cond * c.disc != ideal_from_element(x * c.cond_den**2):
                ok = False
                notes.append(f"round trip D={D} x={x}")
            c2 = relative_discriminant(F, x * t * t)
            for p in (2, 3, 5, 7, 11, 13):
                for P in primes_above(F, p):
                    if not P.contains(t) and c.at_prime(P) != c2.at_prime(P):
                        ok = False
                        notes.append(f"square class D={D} x={x} t={t}")
    # degree-one mode against Cohen's numbers
    for r in (2, 3):
        for N in range(0, 201):
            if h_coeff_q(r, N) != cohen_H(r, N):
                ok = False
                notes.append(f"Q mode r={r} N={N}")
    # partial zeta values do not depend on the class representative
    for D, mod in ((24, None), (5, 2), (13, 3)):
        F = make_field(D)
        M = None if mod is None else ideal_from_element(F(mod))
        ctx = ray_classes(F, M)
        for idx, R in enumerate(ctx.reps):
            eta = _unit_congruent_multiplier(ctx)
            other = R * ideal_from_element(eta)
            if partial_zeta_neg(ctx, idx, -1) != partial_zeta_neg(ctx, idx, -1, rep=other):
                ok = False
                notes.append(f"representative D={D} class {idx}")
            if ctx.class_of(other) != idx:
                ok = False
                notes.append(f"class_of D={D} class {idx}")
    return ok, "ring map, square class, conductor round trip, Q mode, representatives: " + (
        ", ".join(notes) if notes else "all hold"
    )


def _unit_congruent_multiplier(ctx):
    """A totally positive non-unit eta with eta = 1 mod the modulus."""
    F = ctx.F
    M = ctx.modulus
    n = M.norm + 1
    while True:
        for b in range(0, 4):
            eta = F(n * M.norm + 1, b * M.norm)
            if eta.is_totally_positive() and abs(eta.norm()) > 1:
                return eta
        n += 1


CHECKS = [
    (1, "theta restriction equals theta^2", check_theta),
    (2, "line sums of r_{F,k} equal r_{2k}", check_sum_of_squares),
    (3, "zeta_F(-1), zeta_F(-3): Shintani equals Siegel", check_zeta_oracles),
    (4, "kappa=1 line sums equal -4 zeta_F(-1)(sigma - sigma')", check_corollary),
    (5, "D=5, kappa=1 decomposition", check_example_k1),
    (6, "D=5, kappa=2 decomposition", check_example_k2),
    (7, "D=5 L-value rows", check_l_rows),
    (8, "classical class number relations", check_classical),
    (9, "dimension table", check_dimensions),
    (10, "property suites", check_properties),
]


def run_check(number: int) -> CheckResult:
    for num, title, fn in CHECKS:
        if num == number:
            t = time.time()
            passed, detail = fn()
            return CheckResult(num, title, passed, detail, time.time() - t)
    raise KeyError(number)


def run_all(echo=print) -> list[CheckResult]:
    out = []
    for num, _, _ in CHECKS:
        r = run_check(num)
        if echo:
            echo(r.line())
        out.append(r)
    return out
