"""Command-line front end: run verification suites and dump eta coefficients.

Reports contain only exact strings and integers (fractions in lowest terms,
valuations, EQUAL/UNEQUAL); no floating point appears anywhere.  The JSON
form re-serializes byte-identically after a round trip, and the CSV column
order is fixed for diff-friendly CI artifacts.

Exit codes: 0 all non-conjectural cases pass (or nothing applicable),
1 some non-conjectural case failed, 2 usage error, 3 I/O error.

The environment variable SUPERCONG_BUDGET overrides the eta-product
expansion bound (default 10000).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .exact_core import is_prime
from .harness import CASE_ORDER, VerificationRecord, report_entry, run_suite, select_cases
from .modular_form import DEFAULT_BUDGET, coefficient_at, eta_product_expansion

REPORT_COLUMNS = ("case", "p", "param", "required", "achieved", "lhs", "rhs", "pass", "conjectural")

DEFAULT_PMIN = 5
DEFAULT_PMAX = 97

# hard ceiling on the scanned prime range; keeps a typo like --pmax 1e9 from
# looking like a hang
MAX_PMAX = 100000


def render_json(records: list[VerificationRecord]) -> str:
    return json.dumps([report_entry(r) for r in records], indent=2) + "\n"


def render_csv(records: list[VerificationRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for rec in records:
        entry = report_entry(rec)
        writer.writerow(
            [
                entry[col] if not isinstance(entry[col], bool) else ("true" if entry[col] else "false")
                for col in REPORT_COLUMNS
            ]
        )
    return buf.getvalue()


def suite_exit_code(records: list[VerificationRecord]) -> int:
    """0 iff every non-conjectural record passes; a pure function of the list."""
    return 1 if any(not r.passed and not r.conjectural for r in records) else 0


def _print_summary(records: list[VerificationRecord]) -> None:
    by_case: dict[str, list[VerificationRecord]] = {}
    for rec in records:
        by_case.setdefault(rec.case, []).append(rec)
    for tag in CASE_ORDER:
        if tag not in by_case:
            continue
        recs = by_case[tag]
        good = sum(1 for r in recs if r.passed)
        note = " (conjectural)" if all(r.conjectural for r in recs) else ""
        print(f"{tag:<18} {good}/{len(recs)} pass{note}")


def _env_budget() -> int:
    raw = os.environ.get("SUPERCONG_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    value = int(raw)
    if value < 1:
        raise ValueError(f"SUPERCONG_BUDGET must be a positive integer, got {raw!r}")
    return value


def cmd_verify(args) -> int:
    explicit_range = args.pmin is not None and args.pmax is not None
    pmin = DEFAULT_PMIN if args.pmin is None else args.pmin
    pmax = DEFAULT_PMAX if args.pmax is None else args.pmax
    if explicit_range and pmin > pmax:
        print(f"error: --pmin {pmin} exceeds --pmax {pmax}", file=sys.stderr)
        return 2
    if args.r < 1:
        print("error: --r must be a positive integer", file=sys.stderr)
        return 2
    if pmax > MAX_PMAX:
        print(f"error: --pmax {pmax} is beyond the supported scale ({MAX_PMAX})", file=sys.stderr)
        return 2
    if args.cases.strip().lower() == "all":
        cases = None
    else:
        try:
            cases = select_cases(name for name in args.cases.split(",") if name.strip())
        except KeyError as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return 2
    try:
        budget = _env_budget()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    primes = [p for p in range(max(pmin, 2), pmax + 1) if is_prime(p)]
    records = run_suite(primes, rs=range(1, args.r + 1), budget=budget, cases=cases)
    if not records:
        print(f"warning: no applicable cases for primes in [{pmin}, {pmax}]")
    else:
        _print_summary(records)

    if args.out:
        text = render_json(records) if args.format == "json" else render_csv(records)
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return 3
    return suite_exit_code(records)


def cmd_coeffs(args) -> int:
    if args.n < 1:
        print("error: --n must be >= 1", file=sys.stderr)
        return 2
    expansion = eta_product_expansion(args.n)
    lines = []
    for n in range(1, args.n + 1):
        if args.primes_only and not is_prime(n):
            continue
        lines.append(f"{n} {coefficient_at(expansion, n)}")
    text = "\n".join(lines) + "\n"
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write coefficients: {exc}", file=sys.stderr)
            return 3
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supercong",
        description="Exact verification of supercongruence and identity cases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser(
        "verify",
        help="run verification cases and emit a report",
        epilog="case tags: " + ", ".join(CASE_ORDER),
    )
    verify.add_argument("--cases", default="all", help="comma-separated case tags, or 'all'")
    verify.add_argument("--pmin", type=int, default=None, help=f"smallest prime (default {DEFAULT_PMIN})")
    verify.add_argument("--pmax", type=int, default=None, help=f"largest prime (default {DEFAULT_PMAX})")
    verify.add_argument("--r", type=int, default=1, help="run exponents 1..r where applicable")
    verify.add_argument("--out", default=None, help="report file path")
    verify.add_argument("--format", choices=("json", "csv"), default="json")
    verify.set_defaults(func=cmd_verify)

    coeffs = sub.add_parser("coeffs", help="dump eta-product q-expansion coefficients")
    coeffs.add_argument("--n", type=int, required=True, help="expansion bound")
    coeffs.add_argument("--primes-only", action="store_true", help="emit only prime indices")
    coeffs.add_argument("--out", default=None, help="output file path")
    coeffs.set_defaults(func=cmd_coeffs)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
