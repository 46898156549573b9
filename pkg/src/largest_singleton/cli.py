"""Command-line entry point.

Exit status: 0 on success (or all checks passing), 1 when an identity,
EGF check or published table disagrees, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import List, Optional

from . import egf, identities
from .combinatorics import WeightFamily, complete_bell, partial_bell
from .partitions import OracleCapError, enumerate_partitions, oracle_A, oracle_cap, weight
from .ring import DEFAULT_BUDGET, MAX_BUDGET, BudgetError, Poly
from .singleton import (
    NUMERIC_NMAX,
    PUBLISHED_TABLES,
    DomainError,
    a_explicit,
    a_recurrence,
    a_umbral,
    build_triangle,
)

INT64_MAX = 2 ** 63 - 1


class UsageError(Exception):
    pass


@dataclass
class Config:
    command: str
    fmt: str
    cap: int
    budget: int
    workers: int = 1


def parse_family(text: str, budget: int) -> WeightFamily:
    if text.startswith("custom:"):
        try:
            return WeightFamily.from_list([s for s in text[len("custom:"):].split(",") if s])
        except ValueError as exc:
            raise UsageError(f"bad custom weight list: {exc}") from None
    if text not in ("symbolic", "permutation", "involution", "forest"):
        raise UsageError(f"unknown family {text!r}")
    return WeightFamily(text, budget=budget)


def json_value(p: Poly):
    """Integers within int64 stay numbers; everything else becomes text."""
    if p.is_constant():
        v = p.constant_value()
        if isinstance(v, int) and -INT64_MAX - 1 <= v <= INT64_MAX:
            return v
    return str(p)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# subcommands

def cmd_tables(args, cfg: Config) -> int:
    fam = parse_family(args.family, cfg.budget)
    if fam.is_numeric and args.nmax > NUMERIC_NMAX:
        raise UsageError(f"--nmax is limited to {NUMERIC_NMAX} for numeric families")
    if not fam.is_numeric and args.nmax + 1 > cfg.budget:
        raise UsageError(f"symbolic --nmax {args.nmax} needs t{args.nmax + 1}; raise --budget")
    tri = build_triangle(fam, args.nmax)
    if cfg.fmt == "json":
        text = _dumps({"family": fam.label(), "nmax": args.nmax,
                       "rows": [[json_value(v) for v in row] for row in tri.rows]})
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n/k"] + list(range(args.nmax + 1)))
        for n, row in enumerate(tri.rows):
            writer.writerow([n] + [str(v) for v in row] + [""] * (args.nmax - n))
        text = buf.getvalue()
    else:
        cells = [[str(v) for v in row] for row in tri.rows]
        width = max(len(c) for row in cells for c in row)
        text = "".join(f"{n:>3} | " + " ".join(c.rjust(width) for c in row) + "\n"
                       for n, row in enumerate(cells))
    _emit(text, args.out)
    ref = PUBLISHED_TABLES.get(fam.kind)
    if ref is not None:
        bad = tri.mismatches(ref)
        for n, k, got, want in bad:
            print(f"table mismatch at n={n}, k={k}: {got} != {want}", file=sys.stderr)
        if bad:
            return 1
    return 0


def cmd_value(args, cfg: Config) -> int:
    fam = parse_family(args.family, cfg.budget)
    n, k = args.n, args.k
    if not 0 <= k <= n:
        raise UsageError("need 0 <= k <= n")
    if args.method == "recurrence":
        v = a_recurrence(n, k, fam)
    elif args.method == "explicit":
        v = a_explicit(n - k, k, fam)
    elif args.method == "umbral":
        v = a_umbral(n - k, k, fam)
    else:
        v = oracle_A(n, k, fam, cap=cfg.cap)
    if cfg.fmt == "json":
        _emit(_dumps({"family": fam.label(), "n": n, "k": k, "method": args.method,
                      "value": json_value(v)}), args.out)
    else:
        _emit(f"{v}\n", args.out)
    return 0


def cmd_enumerate(args, cfg: Config) -> int:
    fam = parse_family(args.family, cfg.budget)
    lines = []
    records = []
    for p in enumerate_partitions(args.n, cap=cfg.cap):
        w = weight(p, fam)
        if cfg.fmt == "json":
            records.append({"blocks": p.blocks, "weight": json_value(w)})
        else:
            lines.append(f"{p}\t{w}\n")
    _emit(_dumps(records) if cfg.fmt == "json" else "".join(lines), args.out)
    return 0


def cmd_bell(args, cfg: Config) -> int:
    fam = parse_family(args.family, cfg.budget)
    if args.r is None:
        v = complete_bell(args.n, fam, args.no_singletons)
    else:
        if args.no_singletons:
            fam = fam.without_singletons()
        v = partial_bell(args.n, args.r, fam)
    if cfg.fmt == "json":
        _emit(_dumps({"n": args.n, "r": args.r, "family": fam.label(), "value": json_value(v)}), args.out)
    else:
        _emit(f"{v}\n", args.out)
    return 0


def cmd_egf_check(args, cfg: Config) -> int:
    order = args.order
    if args.which == "lemma21":
        fam = parse_family(args.family, cfg.budget)
        if not fam.is_numeric and order > cfg.budget:
            raise UsageError(f"symbolic order {order} needs t{order}; raise --budget")
        report = egf.check_lemma21(order, fam)
    elif args.which in ("permutation", "involution", "forest"):
        full = egf.check_family_gfs(order)
        report = next(p for p in full.parts if p.which == args.which)
    elif args.which == "tree":
        report = egf.check_tree_identity(order)
    else:
        report = egf.check_fibonacci(order)
    _emit(_dumps(report.to_dict()), args.out)
    return 0 if report.passed else 1


def _bindings(args) -> dict:
    return {p: getattr(args, p) for p in ("n", "m", "k") if getattr(args, p) is not None}


def cmd_check(args, cfg: Config) -> int:
    try:
        rec = identities.lookup(args.id)
    except identities.UnknownIdentityError:
        raise UsageError(f"unknown identity {args.id!r}") from None
    b = {p: v for p, v in _bindings(args).items() if p in rec.params}
    for p in rec.params:
        b.setdefault(p, 0)
    try:
        report = identities.check_record(rec, b)
    except identities.BindingError as exc:
        raise UsageError(str(exc)) from None
    if cfg.fmt == "json":
        _emit(_dumps(report.to_dict(timing=args.timings)), args.out)
    else:
        _emit(f"{report.id} {report.params} {report.status}\n", args.out)
    return 0 if report.passed else 1


def cmd_suite(args, cfg: Config) -> int:
    given = {p: v for p, v in (("n", args.nmax), ("m", args.mmax), ("k", args.kmax)) if v is not None}
    if any(v < 0 for v in given.values()):
        raise UsageError("grid maxima must be nonnegative")
    ranges = given if given else None
    ids = args.id or None
    if ids:
        for i in ids:
            if i not in identities.registry():
                raise UsageError(f"unknown identity {i!r}")
    reports = identities.run_suite(ranges, workers=cfg.workers, ids=ids, defaults=True)
    failures = [r for r in reports if not r.passed]
    if cfg.fmt == "json":
        text = _dumps([r.to_dict(timing=args.timings) for r in reports])
    else:
        text = "".join(f"{r.id:12} {json.dumps(r.params, sort_keys=True)} {r.status}\n" for r in reports)
    _emit(text, args.out)
    print(f"{len(reports)} checks, {len(failures)} failures", file=sys.stderr)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="largest-singleton",
                                     description="Weighted largest-singleton partition statistics.")
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help=f"symbolic weight variables t1..tN (default {DEFAULT_BUDGET})")
    parser.add_argument("--cap", type=int, default=None,
                        help="enumeration cap (default: $PW_ORACLE_CAP or 12)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("json", "text"), default="text"):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", help="write output to this path instead of stdout")

    fam_help = "symbolic|permutation|involution|forest|custom:w1,w2,..."

    p = sub.add_parser("tables", help="print the A_{n,k} triangle")
    p.add_argument("--family", default="permutation", help=fam_help)
    p.add_argument("--nmax", type=int, default=6)
    common(p, ("csv", "json", "text"), "csv")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("value", help="a single A_{n,k}")
    p.add_argument("--family", default="symbolic", help=fam_help)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=("recurrence", "explicit", "umbral", "oracle"),
                   default="recurrence")
    common(p)
    p.set_defaults(func=cmd_value)

    p = sub.add_parser("enumerate", help="list partitions of [n] with weights")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", default="symbolic", help=fam_help)
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("bell", help="partial (with --r) or complete Bell polynomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--family", default="symbolic", help=fam_help)
    p.add_argument("--no-singletons", action="store_true")
    common(p)
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("egf-check", help="generating-function checks (JSON report)")
    p.add_argument("--which", required=True,
                   choices=("lemma21", "permutation", "involution", "forest", "tree", "fibonacci"))
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--family", default="symbolic", help="family for lemma21")
    p.add_argument("--out")
    p.set_defaults(func=cmd_egf_check, format="json")

    p = sub.add_parser("check", help="check one identity at one parameter point")
    p.add_argument("--id", required=True)
    for name in ("n", "m", "k"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--timings", action="store_true")
    common(p, default="json")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("suite", help="check every identity over a grid")
    p.add_argument("--nmax", type=int)
    p.add_argument("--mmax", type=int)
    p.add_argument("--kmax", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--id", action="append", help="restrict to these identity ids")
    p.add_argument("--timings", action="store_true", help="include per-check elapsed seconds")
    common(p, default="json")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if not 1 <= args.budget <= MAX_BUDGET:
            raise UsageError(f"--budget must be in 1..{MAX_BUDGET}")
        if args.cap is not None:
            if args.cap < 0:
                raise UsageError("--cap must be nonnegative")
            os.environ["PW_ORACLE_CAP"] = str(args.cap)  # inherited by worker processes
        workers = getattr(args, "workers", 1)
        if workers < 1:
            raise UsageError("--workers must be positive")
        for name in ("n", "k", "r", "nmax", "order"):
            v = getattr(args, name, None)
            if v is not None and v < 0:
                raise UsageError(f"--{name} must be nonnegative")
        cfg = Config(args.command, args.format, oracle_cap(), args.budget, workers)
        return args.func(args, cfg)
    except (UsageError, OracleCapError, BudgetError, DomainError, IndexError) as exc:
        print(f"largest-singleton {args.command}: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
