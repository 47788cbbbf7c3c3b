"""Relation reports: per-index rows of exact left/right sides."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from hq import __version__

SCHEMA = 1


def fmt(q) -> str:
    """Exact rational as "p/q" (integers as "p")."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass
class Row:
    n: int
    lhs: Fraction
    rhs: Fraction
    tag: str = ""

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class RelationReport:
    relation: str
    params: dict
    rows: list[Row] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def add(self, n, lhs, rhs):
        self.rows.append(Row(n, Fraction(lhs), Fraction(rhs)))

    @property
    def n_pass(self) -> int:
        return sum(r.equal for r in self.rows)

    @property
    def n_fail(self) -> int:
        return len(self.rows) - self.n_pass

    @property
    def passed(self) -> bool:
        return self.n_fail == 0 and not self.notes.get("verdict_failed")

    def failures(self) -> list[Row]:
        return [r for r in self.rows if not r.equal]

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.relation} {self.params}: {self.n_pass} pass, {self.n_fail} fail"

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "relation": self.relation,
            "params": self.params,
            "rows": [
                {"n": r.n, "lhs": fmt(r.lhs), "rhs": fmt(r.rhs), "equal": r.equal, **({"tag": r.tag} if r.tag else {})}
                for r in self.rows
            ],
            "summary": {"pass": self.n_pass, "fail": self.n_fail},
            "provenance": {"package": "hq", "version": __version__},
            "notes": {k: (fmt(v) if isinstance(v, Fraction) else v) for k, v in self.notes.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "lhs", "rhs", "equal"])
        for r in self.rows:
            w.writerow([r.n, fmt(r.lhs), fmt(r.rhs), str(r.equal).lower()])
        return buf.getvalue()
