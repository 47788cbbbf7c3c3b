"""Verify every relation over a range of fields and write one report per run.

    python3 scripts/sweep.py --discs 5 8 13 17 29 --prec 40 --outdir results
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from hq.cohen import g_table
from hq.dirichlet import verify_classical
from hq.field import NoNegativeNormUnit, find_restriction_unit, make_field
from hq.qseries import verify_corollary_k1, verify_sum_of_squares, verify_theorem_consts, verify_theta_identity


@dataclass
class SweepConfig:
    discs: list[int] = field(default_factory=lambda: [5, 8, 13, 17, 29])
    prec: int = 40
    kappas: list[int] = field(default_factory=lambda: [1, 2])
    classical_max: int = 300
    outdir: Path = Path("results")


def run(cfg: SweepConfig) -> bool:
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    ok = True

    def save(rep, name):
        nonlocal ok
        (cfg.outdir / f"{name}.json").write_text(rep.to_json() + "\n")
        ok = ok and rep.passed
        print(f"{time.strftime('%H:%M:%S')} {rep.summary()}", flush=True)

    for rep in verify_classical(cfg.classical_max):
        save(rep, rep.relation)
    for D in cfg.discs:
        F = make_field(D)
        try:
            U = find_restriction_unit(F)
        except NoNegativeNormUnit as e:
            print(f"skip D={D}: {e}")
            continue
        save(verify_theta_identity(F, U, 10 * cfg.prec), f"theta_D{D}")
        save(verify_sum_of_squares(F, U, 3, cfg.prec), f"sumsq_D{D}")
        for kappa in cfg.kappas:
            table = g_table(F, kappa, U, cfg.prec)
            if kappa == 1:
                save(verify_corollary_k1(F, U, cfg.prec, table=table), f"corollary_D{D}")
            save(verify_theorem_consts(F, U, kappa, cfg.prec, table=table), f"consts_D{D}_k{kappa}")
    summary = {"config": {"discs": cfg.discs, "prec": cfg.prec, "kappas": cfg.kappas}, "all_pass": ok}
    (cfg.outdir / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return ok


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--discs", type=int, nargs="+", default=SweepConfig().discs)
    p.add_argument("--prec", type=int, default=SweepConfig.prec)
    p.add_argument("--kappas", type=int, nargs="+", default=SweepConfig().kappas)
    p.add_argument("--classical-max", type=int, default=SweepConfig.classical_max)
    p.add_argument("--outdir", type=Path, default=SweepConfig.outdir)
    a = p.parse_args()
    ok = run(SweepConfig(a.discs, a.prec, a.kappas, a.classical_max, a.outdir))
    raise SystemExit(0 if ok else 2)


if __name__ == "__main__":
    main()
