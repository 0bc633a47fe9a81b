"""Command-line front end.

    kpoisson moment --k 2 --n 4 [--lambda 1/2 [--exact]]
    kpoisson pmf    --k 2 --lambda 1 --n-max 20
    kpoisson coeff  --k 3 --n 4 --power 2
    kpoisson verify --k-max 8 --n-max 12 [--seed 1]
    kpoisson sample --k 3 --lambda 1 --trials 1000000 --n-max 3 --seed 7

Every subcommand takes ``--format {text,csv,json}``. Exit codes: 0 success,
1 usage or parse error, 2 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, TextIO

from .exact import poly_eval_exact
from .moments import DomainError, coeff_closed_form, factorial_moment_poly, pmf_values
from .oracles.sampling import NotSupportedError, sample_moments
from .verify import run_verification

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2

FIELDS = ("kind", "k", "n", "lambda", "coeffs", "value", "status")


@dataclass
class OutputRecord:
    kind: str
    k: int
    n: int
    lam: Optional[str] = None
    coeffs: Optional[list[str]] = None
    value: Optional[str] = None
    status: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "k": self.k,
            "n": self.n,
            "lambda": self.lam,
            "coeffs": self.coeffs,
            "value": self.value,
            "status": self.status,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OutputRecord":
        return cls(d["kind"], d["k"], d["n"], d["lambda"], d["coeffs"], d["value"], d["status"])


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_lambda(text: str) -> Fraction:
    """Parse ``p/q`` or a decimal string exactly."""
    try:
        lam = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse lambda {text!r}; use p/q or a decimal") from None
    if lam < 0:
        raise UsageError(f"lambda must be >= 0, got {text}")
    return lam


def _write(records: list[OutputRecord], fmt: str, out: TextIO, text_lines: Iterable[str]) -> None:
    if fmt == "json":
        for r in records:
            out.write(json.dumps(r.to_dict()) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(FIELDS)
        for r in records:
            d = r.to_dict()
            w.writerow(
                [
                    d["kind"],
                    d["k"],
                    d["n"],
                    d["lambda"] or "",
                    ";".join(d["coeffs"]) if d["coeffs"] is not None else "",
                    d["value"] or "",
                    json.dumps(d["status"], sort_keys=True) if d["status"] is not None else "",
                ]
            )
    else:
        for line in text_lines:
            out.write(line + "\n")


def read_csv_records(text: str) -> list[OutputRecord]:
    """Inverse of the CSV writer."""
    rows = list(csv.DictReader(text.splitlines()))
    out = []
    for row in rows:
        out.append(
            OutputRecord(
                row["kind"],
                int(row["k"]),
                int(row["n"]),
                row["lambda"] or None,
                row["coeffs"].split(";") if row["coeffs"] else None,
                row["value"] or None,
                json.loads(row["status"]) if row["status"] else None,
            )
        )
    return out


def cmd_moment(args, out: TextIO) -> int:
    poly = factorial_moment_poly(args.n, args.k)
    coeffs = [str(c) for c in poly.coeffs] or ["0"]
    if args.lam is None:
        rec = OutputRecord("moment", args.k, args.n, coeffs=coeffs)
        text = [f"M_{args.n}(k={args.k}, lam) = {poly}"]
    else:
        lam = parse_lambda(args.lam)
        exact = poly_eval_exact(poly, lam)
        value = str(exact) if args.exact else repr(float(exact))
        rec = OutputRecord("moment", args.k, args.n, str(lam), coeffs, value)
        text = [value]
    _write([rec], args.format, out, text)
    return EXIT_OK


def cmd_pmf(args, out: TextIO) -> int:
    lam = parse_lambda(args.lam)
    if lam <= 0:
        raise UsageError("pmf needs lambda > 0")
    if args.n_max < 0:
        raise UsageError("--n-max must be >= 0")
    scale = math.exp(-args.k * float(lam))
    records, lines = [], [f"{'n':>5} {'P_n':>24} {'cumulative':>24}"]
    cum = 0.0
    for n, w in enumerate(pmf_values(args.k, lam, args.n_max)):
        p = float(w) * scale
        cum += p
        records.append(
            OutputRecord("pmf", args.k, n, str(lam), value=repr(p), status={"cumulative": repr(cum)})
        )
        lines.append(f"{n:>5} {p:>24.17g} {cum:>24.17g}")
    _write(records, args.format, out, lines)
    return EXIT_OK


def cmd_coeff(args, out: TextIO) -> int:
    try:
        closed = coeff_closed_form(args.n, args.k, args.power)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    extracted = factorial_moment_poly(args.n, args.k)[args.power]
    match = closed == extracted
    rec = OutputRecord(
        "coeff",
        args.k,
        args.n,
        value=str(closed),
        status={"power": args.power, "closed_form": str(closed), "extracted": str(extracted), "match": match},
    )
    text = [f"[lam^{args.power}] M_{args.n}(k={args.k}): {closed} = {extracted}, {'match' if match else 'MISMATCH'}"]
    _write([rec], args.format, out, text)
    return EXIT_OK if match else EXIT_MISMATCH


def cmd_verify(args, out: TextIO) -> int:
    if args.k_max < 1 or args.n_max < 0:
        raise UsageError("verify needs --k-max >= 1 and --n-max >= 0")
    report = run_verification(args.k_max, args.n_max, args.seed, kappa_fault=args.inject_kappa_fault)
    records = [
        OutputRecord("verify", c.k, c.n, status={"passed": c.passed, "failures": c.failures})
        for c in report.cells
    ]
    summary = {"passed": report.passed, "cells": len(report.cells), "checks": report.checks}
    bad = report.first_failure()
    if bad is not None:
        summary["first_counterexample"] = {"k": bad.k, "n": bad.n, "detail": bad.failures[0]}
    records.append(OutputRecord("verify", args.k_max, args.n_max, value="pass" if report.passed else "fail", status=summary))
    lines = [f"verified {len(report.cells)} cells, {report.checks} checks (k <= {args.k_max}, n <= {args.n_max})"]
    if bad is None:
        lines.append("PASS")
    else:
        lines.append(f"FAIL at k={bad.k}, n={bad.n}")
        lines.extend("  " + msg for msg in bad.failures)
    _write(records, args.format, out, lines)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_sample(args, out: TextIO) -> int:
    lam = parse_lambda(args.lam)
    if args.n_max < 1 or args.trials < 1:
        raise UsageError("sample needs --n-max >= 1 and --trials >= 1")
    try:
        summary = sample_moments(args.k, float(lam), args.n_max, args.trials, args.seed, workers=args.workers)
    except NotSupportedError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    records = []
    lines = [f"k={args.k} lam={lam} trials={args.trials} seed={args.seed}",
             f"{'n':>3} {'estimate':>22} {'exact':>22} {'stderr':>12} {'z':>8}"]
    for n in range(1, args.n_max + 1):
        est, se = summary.estimates[n - 1], summary.std_errors[n - 1]
        exact = float(poly_eval_exact(factorial_moment_poly(n, args.k), lam))
        z = (est - exact) / se if se > 0 else 0.0
        records.append(
            OutputRecord(
                "sample",
                args.k,
                n,
                str(lam),
                value=repr(est),
                status={
                    "exact": repr(exact),
                    "stderr": repr(se),
                    "z": repr(z),
                    "trials": args.trials,
                    "seed": args.seed,
                },
            )
        )
        lines.append(f"{n:>3} {est:>22.15g} {exact:>22.15g} {se:>12.6g} {z:>8.3f}")
    _write(records, args.format, out, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kpoisson", description="Factorial moments of the Poisson distribution of order k.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("text", "csv", "json"), default="text")

    sp = sub.add_parser("moment", help="factorial moment polynomial or its value")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", help="exact rational p/q or decimal")
    sp.add_argument("--exact", action="store_true", help="print the value as an exact fraction")
    common(sp)
    sp.set_defaults(func=cmd_moment)

    sp = sub.add_parser("pmf", help="PMF table with cumulative sums")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--n-max", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_pmf)

    sp = sub.add_parser("coeff", help="closed-form coefficient against the extracted one")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--power", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_coeff)

    sp = sub.add_parser("verify", help="cross-check every formula over a grid")
    sp.add_argument("--k-max", type=int, required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--seed", type=int, default=None, help="also compare values at random rational lambdas")
    sp.add_argument("--inject-kappa-fault", type=int, default=None, help=argparse.SUPPRESS)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sample", help="Monte Carlo estimates of the factorial moments")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_sample)
    return p


def main(argv=None, out: Optional[TextIO] = None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "k", 1) < 1:
            raise UsageError(f"--k must be >= 1, got {args.k}")
        if getattr(args, "n", 0) < 0:
            raise UsageError(f"--n must be >= 0, got {args.n}")
        return args.func(args, out)
    except UsageError as exc:
        print(f"kpoisson: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
