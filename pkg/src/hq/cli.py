"""Command-line front end: ``hq <command> [options]``.

Exit codes: 0 when everything requested passed, 2 when a verification
failed, 1 on usage or computation errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from hq import __version__
from hq import cache as hq_cache
from hq.ideals import DEFAULT_FACTOR_BOUND, FactorizationOverflow
from hq.report import SCHEMA, RelationReport, fmt
from hq.shintani import EnumerationBoundExceeded, OracleMismatch

COMMANDS = ("hurwitz", "cohen", "lvalue", "gtable", "restrict", "fchar", "verify", "selftest", "cache")
RELATIONS = ("classical", "theta", "sumsq", "corollary", "consts")
DEFAULT_CACHE = Path.home() / ".cache" / "hq" / "values.json"

EXIT_OK, EXIT_ERROR, EXIT_FAILED = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    relation: str | None = None
    disc: int | None = None
    kappa: int = 1
    prec: int = 50
    max_n: int = 100
    r: int = 2
    x: str | None = None
    k: int = 1
    chiprime: str = "trivial"
    ideal: str | None = None
    out: str | None = None
    format: str | None = None
    cache: str | None = None
    factor_bound: int = DEFAULT_FACTOR_BOUND
    verbose: int = 0
    action: str | None = None

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}; choose from {', '.join(COMMANDS)}")
        if self.command == "verify" and self.relation not in RELATIONS:
            raise UsageError(f"verify needs one of {', '.join(RELATIONS)}")
        needs_disc = self.command in ("lvalue", "gtable", "restrict", "fchar") or (
            self.command == "verify" and self.relation != "classical"
        )
        if needs_disc and self.disc is None:
            raise UsageError(f"{self.command} needs --disc D (a fundamental discriminant > 1)")
        if self.command in ("lvalue", "fchar") and not self.x:
            raise UsageError(f"{self.command} needs --x \"a+b*w\"")
        if self.command == "fchar" and not self.ideal:
            raise UsageError("fchar needs --ideal \"[a, b+c*w]\"")
        if self.kappa < 1:
            raise UsageError("--kappa must be >= 1")
        if self.prec < 0 or self.max_n < 1:
            raise UsageError("--prec must be >= 0 and --max >= 1")
        if self.r < 1:
            raise UsageError("--r must be >= 1")
        if self.k < 1:
            raise UsageError("--k must be >= 1 (the value is taken at s = 1 - k)")
        if self.chiprime != "trivial":
            raise UsageError("only --chiprime trivial is supported from the command line")
        if self.factor_bound < 2:
            raise UsageError("--factor-bound must be >= 2")
        # "--out csv" / "--out json" selects a format for stdout
        if self.out in ("csv", "json") and self.format is None:
            self.format, self.out = self.out, None
        if self.format is None:
            self.format = "json" if self.out and self.out.endswith(".json") else "csv"
        if self.format not in ("csv", "json"):
            raise UsageError("--format must be csv or json")
        return self

    def cache_path(self) -> Path:
        """--cache beats HQ_CACHE beats the default location."""
        if self.cache:
            return Path(self.cache)
        env = hq_cache.default_path()
        return env if env else DEFAULT_CACHE


# ------------------------------------------------------------------ output


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
        Path(cfg.out).write_text(text)
        print(f"wrote {cfg.out}")
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    obj = {"schema": SCHEMA, **obj, "provenance": {"package": "hq", "version": __version__}}
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _reports_text(cfg: RunConfig, reports: list[RelationReport]) -> str:
    if cfg.format == "json":
        if len(reports) == 1:
            return reports[0].to_json() + "\n"
        return _json({"reports": [r.to_dict() for r in reports]})
    if len(reports) == 1:
        return reports[0].to_csv()
    rows = [[rep.relation, r.n, fmt(r.lhs), fmt(r.rhs), str(r.equal).lower()] for rep in reports for r in rep.rows]
    return _csv(["relation", "n", "lhs", "rhs", "equal"], rows)


def _log(cfg: RunConfig, msg: str) -> None:
    if cfg.verbose:
        print(msg, file=sys.stderr)


# ---------------------------------------------------------------- commands


def _field_and_unit(cfg: RunConfig):
    from hq.field import find_restriction_unit, make_field

    F = make_field(cfg.disc)
    return F, find_restriction_unit(F)


def cmd_hurwitz(cfg: RunConfig) -> int:
    from hq.dirichlet import hurwitz_H

    rows = [(N, fmt(hurwitz_H(N))) for N in range(cfg.max_n + 1)]
    if cfg.format == "json":
        _emit(cfg, _json({"table": "hurwitz", "rows": [{"N": N, "H": h} for N, h in rows]}))
    else:
        _emit(cfg, _csv(["N", "H"], rows))
    return EXIT_OK


def cmd_cohen(cfg: RunConfig) -> int:
    from hq.dirichlet import cohen_H

    rows = [(N, fmt(cohen_H(cfg.r, N))) for N in range(cfg.max_n + 1)]
    if cfg.format == "json":
        _emit(cfg, _json({"table": "cohen", "r": cfg.r, "rows": [{"N": N, "H": h} for N, h in rows]}))
    else:
        _emit(cfg, _csv(["N", "H"], rows))
    return EXIT_OK


def cmd_lvalue(cfg: RunConfig) -> int:
    from hq.field import make_field
    from hq.fquad import relative_discriminant
    from hq.shintani import hecke_L_neg

    F = make_field(cfg.disc)
    x = F.parse(cfg.x)
    chi = relative_discriminant(F, x, cfg.factor_bound)
    print(fmt(hecke_L_neg(F, chi, 1 - cfg.k)))
    return EXIT_OK


def _table(cfg: RunConfig, F, U):
    from hq.cohen import g_table

    progress = (lambda n: _log(cfg, f"line {n}/{cfg.prec}")) if cfg.verbose > 1 else None
    return g_table(F, cfg.kappa, U, cfg.prec, progress=progress, bound=cfg.factor_bound)


def cmd_gtable(cfg: RunConfig) -> int:
    from hq.field import format_elt

    F, U = _field_and_unit(cfg)
    table = _table(cfg, F, U)
    rows = [(format_elt(xi), n, fmt(h)) for xi, n, h in table.rows()]
    if cfg.format == "json":
        _emit(cfg, _json({
            "D": F.D, "kappa": cfg.kappa, "prec": cfg.prec, "chi_prime": "trivial",
            "unit": format_elt(U.u), "constant": fmt(table.constant),
            "rows": [{"xi": xi, "n": n, "H": h} for xi, n, h in rows],
        }))
    else:
        _emit(cfg, _csv(["xi", "n", "H"], rows))
    return EXIT_OK


def cmd_restrict(cfg: RunConfig) -> int:
    from hq.qseries import decompose, restrict

    F, U = _field_and_unit(cfg)
    series = restrict(_table(cfg, F, U))
    if cfg.format == "json":
        dec = decompose(series, cfg.kappa)
        body = {"D": F.D, "kappa": cfg.kappa, "prec": cfg.prec,
                "coefficients": [fmt(c) for c in series],
                "decomposition": {"c_E": fmt(dec.c_E), "c_F": fmt(dec.c_F),
                                  "c_S": None if dec.c_S is None else fmt(dec.c_S),
                                  "verdict": dec.verdict}}
        _emit(cfg, _json(body))
    else:
        _emit(cfg, _csv(["n", "coefficient"], [(n, fmt(c)) for n, c in enumerate(series)]))
    return EXIT_OK


def cmd_fchar(cfg: RunConfig) -> int:
    from hq.field import make_field
    from hq.fquad import relative_discriminant
    from hq.ideals import parse_ideal

    F = make_field(cfg.disc)
    x = F.parse(cfg.x)
    I = parse_ideal(F, cfg.ideal)
    chi = relative_discriminant(F, x, cfg.factor_bound)
    if chi.square_class_flag:
        print("x is a square: trivial extension")
    print(f"disc {chi.disc}")
    print(f"cond {chi.cond}" + (f" / {chi.cond_den}" if chi.cond_den != 1 else ""))
    print(f"chi {chi(I)}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    from hq import qseries

    if cfg.relation == "classical":
        from hq.dirichlet import verify_classical

        reports = verify_classical(cfg.max_n)
    else:
        F, U = _field_and_unit(cfg)
        if cfg.relation == "theta":
            reports = [qseries.verify_theta_identity(F, U, cfg.prec)]
        elif cfg.relation == "sumsq":
            reports = [qseries.verify_sum_of_squares(F, U, cfg.kappa, cfg.prec)]
        elif cfg.relation == "corollary":
            if cfg.kappa != 1:
                raise UsageError("the corollary relation is the kappa = 1 case; drop --kappa")
            reports = [qseries.verify_corollary_k1(F, U, cfg.prec, table=_table(cfg, F, U))]
        else:
            reports = [qseries.verify_theorem_consts(F, U, cfg.kappa, cfg.prec, table=_table(cfg, F, U))]
    if cfg.out:
        _emit(cfg, _reports_text(cfg, reports))
    for rep in reports:
        print(rep.summary())
        for row in rep.failures()[:5]:
            print(f"  n={row.n}: {fmt(row.lhs)} != {fmt(row.rhs)}")
        if rep.notes.get("verdict_failed"):
            print(f"  notes: {rep.to_dict()['notes']}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_selftest(cfg: RunConfig) -> int:
    from hq.acceptance import run_all

    results = run_all(echo=lambda line: print(line, flush=True))
    n_ok = sum(r.passed for r in results)
    print(f"{n_ok}/{len(results)} criteria pass")
    if cfg.out:
        body = {"criteria": [{"number": r.number, "title": r.title, "passed": r.passed, "detail": r.detail}
                             for r in results]}
        Path(cfg.out).write_text(_json(body))
    return EXIT_OK if n_ok == len(results) else EXIT_FAILED


def cmd_cache(cfg: RunConfig) -> int:
    c = hq_cache.active_cache()
    if cfg.action == "clear":
        c.clear()
        print(f"cleared {c.path}")
    else:
        print(f"path {c.path}")
        print(f"entries {len(c)}")
    return EXIT_OK


HANDLERS = {
    "hurwitz": cmd_hurwitz,
    "cohen": cmd_cohen,
    "lvalue": cmd_lvalue,
    "gtable": cmd_gtable,
    "restrict": cmd_restrict,
    "fchar": cmd_fchar,
    "verify": cmd_verify,
    "selftest": cmd_selftest,
    "cache": cmd_cache,
}


def run(cfg: RunConfig) -> int:
    """Validate, execute, flush the value cache; returns the exit code."""
    try:
        cfg.validate()
        c = hq_cache.set_cache_path(cfg.cache_path())
        code = HANDLERS[cfg.command](cfg)
        if cfg.command != "cache":
            c.flush()
            _log(cfg, f"cache {c.path}: {c.hits} hits, {c.misses} misses")
        return code
    except UsageError as e:
        print(f"hq: usage error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except OracleMismatch as e:
        print(f"hq: oracle mismatch: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, ArithmeticError, EnumerationBoundExceeded, FactorizationOverflow,
            hq_cache.CacheConflict) as e:
        print(f"hq: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR


# ------------------------------------------------------------------ parser


class _Parser(argparse.ArgumentParser):
    """argparse with exit code 1 on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"hq: usage error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (format from --format or the suffix)")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--cache", help="value cache file (default: $HQ_CACHE or ~/.cache/hq/values.json)")
    common.add_argument("--factor-bound", type=int, default=DEFAULT_FACTOR_BOUND, dest="factor_bound")
    common.add_argument("-v", "--verbose", action="count", default=0)

    field_opts = argparse.ArgumentParser(add_help=False)
    field_opts.add_argument("--disc", type=int, help="fundamental discriminant D > 1")
    field_opts.add_argument("--kappa", type=int, default=1)
    field_opts.add_argument("--prec", type=int, default=50)

    p = _Parser(prog="hq", description="Exact Hilbert Cohen-Eisenstein coefficients and their restrictions.")
    p.add_argument("--version", action="version", version=f"hq {__version__}")
    p.add_argument("--selftest", action="store_true", help="same as the selftest command")
    sub = p.add_subparsers(dest="command")

    s = sub.add_parser("hurwitz", parents=[common], help="Hurwitz class numbers H(N), 0 <= N <= max")
    s.add_argument("--max", type=int, default=100, dest="max_n")
    s = sub.add_parser("cohen", parents=[common], help="Cohen's H(r, N), 0 <= N <= max")
    s.add_argument("--r", type=int, default=2)
    s.add_argument("--max", type=int, default=100, dest="max_n")
    s = sub.add_parser("lvalue", parents=[common], help="L_F(1 - k, chi_x) exactly")
    s.add_argument("--disc", type=int)
    s.add_argument("--x")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--chiprime", default="trivial")
    sub.add_parser("gtable", parents=[common, field_opts], help="coefficient table H_kappa(xi) up to line prec")
    sub.add_parser("restrict", parents=[common, field_opts], help="restricted q-expansion")
    s = sub.add_parser("fchar", parents=[common], help="relative discriminant, conductor, character value")
    s.add_argument("--disc", type=int)
    s.add_argument("--x")
    s.add_argument("--ideal")
    s = sub.add_parser("verify", parents=[common, field_opts], help="verify a relation exactly")
    s.add_argument("relation", choices=RELATIONS)
    s.add_argument("--max", type=int, default=300, dest="max_n")
    sub.add_parser("selftest", parents=[common], help="run every acceptance check")
    s = sub.add_parser("cache", parents=[common], help="inspect or clear the value cache")
    s.add_argument("action", choices=("info", "clear"), nargs="?", default="info")
    return p


def _glue_values(argv: list[str]) -> list[str]:
    """Turn "--x -2-w" into "--x=-2-w" so argparse does not read the value as a flag."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--x", "--ideal") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    args = build_parser().parse_args(argv)
    if args.selftest and not args.command:
        args.command = "selftest"
    if not args.command:
        build_parser().print_help(sys.stderr)
        return EXIT_ERROR
    opts = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__ and v is not None}
    return run(RunConfig(**opts))


if __name__ == "__main__":
    sys.exit(main())
