"""Numerical cross-check of exact L_F(-1, chi_x) for totally even chi_x.

L_F(2, chi) is a truncated Euler product; the functional equation turns it
into L_F(-1, chi) = (D N(disc))^(3/2) L_F(2, chi) / (4 pi^4).  The exact
value from the cone sums should agree to many digits.

    python3 scripts/l_value_oracle.py --disc 5 --x "5+w" --primes 200000
"""

from __future__ import annotations

import argparse
import math
from dataclasses import dataclass

from sympy import primerange

from hq.field import make_field
from hq.fquad import relative_discriminant
from hq.ideals import primes_above
from hq.shintani import hecke_L_neg


@dataclass
class OracleConfig:
    disc: int = 5
    x: str = "5+w"
    primes: int = 200_000


def euler_L2(F, chi, bound: int) -> float:
    log_L = 0.0
    for p in primerange(2, bound):
        for P in primes_above(F, p):
            c = chi.at_prime(P)
            if c:
                log_L -= math.log1p(-c / P.norm**2)
    return math.exp(log_L)


def run(cfg: OracleConfig) -> tuple[float, object]:
    F = make_field(cfg.disc)
    chi = relative_discriminant(F, F.parse(cfg.x))
    if not chi.is_totally_even():
        raise SystemExit("the s = -1 functional equation used here needs a totally even character")
    L2 = euler_L2(F, chi, cfg.primes)
    # completed L is symmetric under s -> 1 - s; for s = 2 with two real places:
    # L(-1) = (D * N(disc))^(3/2) L(2) / (4 pi^4), sign +1 for quadratic chi
    numeric = (cfg.disc * chi.disc.norm) ** 1.5 * L2 / (4 * math.pi**4)
    return numeric, hecke_L_neg(F, chi, -1)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--disc", type=int, default=OracleConfig.disc)
    p.add_argument("--x", default=OracleConfig.x)
    p.add_argument("--primes", type=int, default=OracleConfig.primes)
    args = p.parse_args()
    cfg = OracleConfig(args.disc, args.x, args.primes)
    numeric, exact = run(cfg)
    print(f"D={cfg.disc} x={cfg.x}: Euler product {numeric:.10f}, exact {exact} = {float(exact):.10f}")


if __name__ == "__main__":
    main()
