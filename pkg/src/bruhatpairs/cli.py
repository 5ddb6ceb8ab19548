"""Command-line interface.

One executable, ``bruhat-pairs``, with subcommands:

- ``compare``  decide one comparison, printing ``true`` or ``false``
- ``count``    exact comparable-pair count for one n
- ``ballot``   admissible-ordering level tables (strong or weak kind)
- ``bounds``   harmonic-product lower-bound table for the weak order
- ``dagger``   exact corner-event probabilities for even n
- ``mc``       seeded Monte Carlo estimates / scaling table
- ``tables``   regenerate the five reference tables as CSV files

Reports are CSV (default) or JSON (an array of flat objects mirroring
the CSV rows).  Floats are printed with 12 significant digits; absent
values are empty CSV fields / JSON nulls.  Exit status: 0 success, 1
guarded-limit violation, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Sequence

from . import ballot, corner, montecarlo, orders, posets
from .errors import (
    BadK,
    BadM,
    LengthMismatch,
    MethodMismatch,
    NotAPermutation,
    OddN,
    TooLarge,
)
from .perm import perm_from_string

GUARD_ERRORS = (TooLarge, BadK, OddN, BadM, MethodMismatch)
INPUT_ERRORS = (NotAPermutation, LengthMismatch)

MC_STRONG_NS = (10, 30, 50, 70, 90, 110)
MC_WEAK_NS = (10, 11, 12, 13, 14, 15, 16)
TABLE_NAMES = ("strong_exact", "weak_exact", "harmonic", "strong_mc", "weak_mc")


def _fmt_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _json_value(value):
    if isinstance(value, float):
        return float(format(value, ".12g"))
    return value


def _emit(header: Sequence[str], rows: Sequence[Sequence], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        payload = [
            {name: _json_value(cell) for name, cell in zip(header, row)} for row in rows
        ]
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt_cell(cell) for cell in row])


# ---------------------------------------------------------------------------
# Row builders shared by subcommands and `tables`.


def _count_rows(order: str, ns: Sequence[int], method: str | None):
    rows = []
    for n in ns:
        count = posets.count_pairs_exact(n, order, method)
        total = factorial(n) ** 2
        p = Fraction(count, total)
        rows.append(
            [
                n,
                order,
                method or ("brute" if order == "strong" else "linext_sum"),
                count,
                total,
                p.numerator,
                p.denominator,
                float(p),
            ]
        )
    return ["n", "order", "method", "count", "pairs_total", "p_num", "p_den", "p_float"], rows


def _ballot_rows(kind: str, kmax: int):
    table = (
        ballot.strong_ballot_table(kmax)
        if kind == "strong"
        else ballot.weak_ordering_table(kmax)
    )
    rows = [
        [r.k, r.count, r.proportion.numerator, r.proportion.denominator, float(r.proportion), r.root]
        for r in table
    ]
    return ["k", "N", "Q_num", "Q_den", "Q_float", "root"], rows


def _bounds_rows(nmax: int):
    rows = []
    for n in range(1, nmax + 1):
        b = posets.weak_product_bound(n)
        scaled = float(Fraction(factorial(n) ** 2) * b)
        rows.append([n, b.numerator, b.denominator, float(b), scaled])
    return ["n", "bound_num", "bound_den", "bound_float", "scaled_float"], rows


def _dagger_rows(nmax: int, alt_denominator: bool):
    rows = []
    for n in range(2, nmax + 1, 2):
        if alt_denominator:
            h = n // 2
            p = sum(
                (
                    corner.dagger_term(corner.CornerCounts(n, m1, m2), alt_denominator=True)
                    for m1 in range(h + 1)
                    for m2 in range(m1 + 1)
                ),
                Fraction(0),
            )
        else:
            p = corner.corner_event_prob(n)
        rows.append([n, p.numerator, p.denominator, float(p), n * n * float(p)])
    return ["n", "prob_num", "prob_den", "prob_float", "n_squared_times_prob"], rows


def _mc_rows(ns: Sequence[int], relation: str, trials: int, seed: int, workers: int):
    rows = []
    for row in montecarlo.scaling_table(ns, relation, trials, seed, workers):
        est = row.estimate
        rows.append(
            [
                row.n,
                relation,
                est.trials,
                est.successes,
                est.p_hat,
                est.stderr,
                row.ln_ratio,
                row.step_ratio,
                est.seed,
                est.workers,
            ]
        )
    return [
        "n",
        "relation",
        "trials",
        "successes",
        "p_hat",
        "stderr",
        "ln_ratio",
        "step_ratio",
        "seed",
        "workers",
    ], rows


# ---------------------------------------------------------------------------
# Subcommand handlers.


def _cmd_compare(args) -> int:
    pi = perm_from_string(args.pi)
    sigma = perm_from_string(args.sigma)
    result = orders.compare(pi, sigma, args.order, args.method)
    print("true" if result else "false")
    return 0


def _cmd_count(args) -> int:
    header, rows = _count_rows(args.order, [args.n], args.method)
    _emit(header, rows, args.format)
    return 0


def _cmd_ballot(args) -> int:
    header, rows = _ballot_rows(args.kind, args.kmax)
    _emit(header, rows, args.format)
    return 0


def _cmd_bounds(args) -> int:
    header, rows = _bounds_rows(args.nmax)
    _emit(header, rows, args.format)
    return 0


def _cmd_dagger(args) -> int:
    header, rows = _dagger_rows(args.nmax, args.alt_denominator)
    _emit(header, rows, args.format)
    return 0


def _cmd_mc(args) -> int:
    ns = [int(part) for part in args.ns.split(",")]
    header, rows = _mc_rows(ns, args.relation, args.trials, args.seed, args.workers)
    _emit(header, rows, args.format)
    return 0


def _table_report(name: str, args):
    if name == "strong_exact":
        return _count_rows("strong", range(1, args.strong_nmax + 1), "brute")
    if name == "weak_exact":
        return _count_rows("weak", range(1, args.weak_nmax + 1), "linext_sum")
    if name == "harmonic":
        return _bounds_rows(args.weak_nmax)
    if name == "strong_mc":
        return _mc_rows(MC_STRONG_NS, "strong", args.trials, args.seed, args.workers)
    if name == "weak_mc":
        return _mc_rows(MC_WEAK_NS, "weak", args.trials, args.seed, args.workers)
    raise ValueError(f"unknown table {name!r}")


def _cmd_tables(args) -> int:
    if args.which != "all":
        header, rows = _table_report(args.which, args)
        _emit(header, rows, args.format)
        return 0
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name in TABLE_NAMES:
        header, rows = _table_report(name, args)
        suffix = "json" if args.format == "json" else "csv"
        path = outdir / f"{name}.{suffix}"
        with path.open("w", encoding="utf-8") as handle:
            _emit(header, rows, args.format, out=handle)
        print(path)
    return 0


# ---------------------------------------------------------------------------
# Parser.


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bruhat-pairs",
        description="Bruhat-order comparability: criteria, exact counts, and Monte Carlo.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("compare", help="decide one comparison")
    p.add_argument("--order", choices=("strong", "weak"), required=True)
    p.add_argument("--pi", required=True, help="comma-separated values, e.g. 2,1,5,3,4")
    p.add_argument("--sigma", required=True)
    p.add_argument(
        "--method",
        choices=sorted(set(orders.STRONG_METHODS) | set(orders.WEAK_METHODS)),
        default=None,
    )
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("count", help="exact comparable-pair count")
    p.add_argument("--order", choices=("strong", "weak"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("brute", "linext_sum"), default=None)
    add_format(p)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("ballot", help="admissible-ordering level table")
    p.add_argument("--kind", choices=("strong", "weak"), required=True)
    p.add_argument("--kmax", type=int, required=True)
    add_format(p)
    p.set_defaults(func=_cmd_ballot)

    p = sub.add_parser("bounds", help="harmonic-product weak-order bound table")
    p.add_argument("--nmax", type=int, default=9)
    add_format(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("dagger", help="exact corner-event probabilities (even n)")
    p.add_argument("--nmax", type=int, default=20)
    p.add_argument(
        "--alt-denominator",
        action="store_true",
        help="use the rejected denominator variant (documentation only)",
    )
    add_format(p)
    p.set_defaults(func=_cmd_dagger)

    p = sub.add_parser("mc", help="Monte Carlo estimates")
    p.add_argument("--ns", required=True, help="comma-separated increasing n values")
    p.add_argument("--relation", choices=montecarlo.RELATIONS, required=True)
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=montecarlo.DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    add_format(p)
    p.set_defaults(func=_cmd_mc)

    p = sub.add_parser("tables", help="regenerate the five reference tables")
    p.add_argument("--which", choices=("all",) + TABLE_NAMES, default="all")
    p.add_argument("--outdir", default="tables_out")
    p.add_argument("--strong-nmax", type=int, default=7)
    p.add_argument("--weak-nmax", type=int, default=9)
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=montecarlo.DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    add_format(p)
    p.set_defaults(func=_cmd_tables)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GUARD_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
