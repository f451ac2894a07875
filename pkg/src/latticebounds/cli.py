"""Command-line entry point: bounds, verify, figures, reduce and empirical.

Exit codes: 0 success, 1 a check failed or a size cap was exceeded, 2 usage
or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import figures, hermite, kzconst, proofcheck, schnorr_rankin
from .bounds import BoundValue, ValidityError
from .specfun import PrecisionPolicy

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _num(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _emit(fmt: str, doc: dict, header: list[str], rows: list[list], text_lines: list[str], out) -> None:
    if fmt == "structured":
        out.write(json.dumps(doc, indent=2, allow_nan=True) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_num(v) for v in row])
    else:
        for line in text_lines:
            out.write(line + "\n")


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------


def _hermite_entries(n: int, method: Optional[str]) -> tuple[list[BoundValue], dict]:
    if method:
        b = hermite.blichfeldt_upper(n) if method == "blichfeldt" else hermite.linear_upper(n, method)
        return [b], {}
    entries = []
    exact = hermite.exact_hermite(n)
    if exact is not None:
        entries.append(exact)
    entries += hermite.upper_candidates(n)
    return entries, {"best": hermite.best_upper(n)}


def _kz_entries(n: int, method: Optional[str]) -> tuple[list[BoundValue], dict]:
    if method:
        return [kzconst.kz_upper(n, method)], {}
    return kzconst.kz_candidates(n), {"best": kzconst.kz_best_upper(n)}


def _schnorr_entries(k: int, method: Optional[str]) -> tuple[list[BoundValue], dict]:
    if k < 1:
        raise ValueError("k must be >= 1")
    if method:
        if method in schnorr_rankin.SCHNORR_UPPER_METHODS:
            return [schnorr_rankin.schnorr_upper(k, method)], {}
        name = method.removesuffix("_lower")
        return [schnorr_rankin.schnorr_lower(k, name)], {}
    entries = []
    small = schnorr_rankin.schnorr_small(k)
    if small is not None:
        entries.append(small)
    entries += [schnorr_rankin.schnorr_upper(k, m)
                for m, s in schnorr_rankin.SCHNORR_UPPER_METHODS.items() if k >= s]
    lowers = [schnorr_rankin.schnorr_lower(k, m)
              for m, s in schnorr_rankin.SCHNORR_LOWER_METHODS.items() if k >= s]
    entries += lowers
    best = {"best": schnorr_rankin.schnorr_best_upper(k)}
    if lowers and not (small is not None and small.kind == "exact"):
        best["best_lower"] = max(lowers, key=lambda b: b.log_value)
    return entries, best


def _rankin_entries(k: int, method: Optional[str]) -> tuple[list[BoundValue], dict]:
    if k < 1:
        raise ValueError("k must be >= 1")
    if method:
        if method == "via_beta":
            return [schnorr_rankin.rankin_upper_via_beta(k)], {}
        return [schnorr_rankin.rankin_bounds(k, method)], {}
    entries = []
    exact = schnorr_rankin.rankin_exact(2 * k, k)
    known = schnorr_rankin.rankin_known_bounds(2 * k, k)
    if exact is not None:
        entries.append(exact)
    if known is not None:
        entries += list(known)
    entries += [schnorr_rankin.rankin_bounds(k, m) for m, s in schnorr_rankin.RANKIN_METHODS.items() if k >= s]
    if k >= 5:
        entries.append(schnorr_rankin.rankin_upper_via_beta(k))
    best = {}
    if exact is not None:
        best["best"] = exact
    else:
        uppers = [b for b in entries if b.kind == "upper"]
        lowers = [b for b in entries if b.kind == "lower"]
        if uppers:
            best["best"] = min(uppers, key=lambda b: b.log_value)
        if lowers:
            best["best_lower"] = max(lowers, key=lambda b: b.log_value)
    return entries, best


_BOUND_DISPATCH = {
    "hermite": _hermite_entries,
    "kz": _kz_entries,
    "schnorr": _schnorr_entries,
    "rankin": _rankin_entries,
}


def cmd_bounds(args, out) -> int:
    param = args.n
    if param is None:
        raise UsageError("give the rank with --n (or --k)")
    try:
        entries, best = _BOUND_DISPATCH[args.constant](param, args.method)
    except (ValidityError, KeyError, ValueError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None
    show_log = args.constant in ("rankin", "kz")
    pname = "k" if args.constant in ("schnorr", "rankin") else "n"
    doc = {
        "constant": args.constant,
        pname: param,
        "bounds": [b.as_dict() for b in entries],
        **{key: b.as_dict() for key, b in best.items()},
    }
    header = ["constant", pname, "method", "kind", "value", "log_value", "selection"]
    rows = []
    for b in entries:
        rows.append([args.constant, param, b.method, b.kind, b.value, b.log_value, ""])
    for key, b in best.items():
        rows.append([args.constant, param, b.method, b.kind, b.value, b.log_value, key])
    lines = []
    for b in entries:
        line = f"{b.method:<12} {b.kind:<6} {b.value:.17g}"
        if show_log:
            line += f"  log={b.log_value:.17g}"
        lines.append(line)
    for key, b in best.items():
        lines.append(f"{key}: {b.method} ({b.kind}) {b.value:.17g}")
    _emit(args.format, doc, header, rows, lines, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args, out) -> int:
    if args.bits < 64:
        raise UsageError("--bits must be at least 64")
    if args.margin_factor < 1:
        raise UsageError("--margin-factor must be at least 1")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    policy = PrecisionPolicy.highprec(args.bits, args.margin_factor)
    reports = proofcheck.run_all(policy, args.filter, jobs=args.jobs)
    if not reports:
        raise UsageError(f"no registered claim matches {args.filter!r}")
    passed = all(r.passed for r in reports)
    doc = {
        "precision_bits": args.bits,
        "margin_factor": args.margin_factor,
        "filter": args.filter,
        "passed": passed,
        "claims": [r.as_dict() for r in reports],
    }
    if args.report:
        try:
            Path(args.report).write_text(json.dumps(doc, indent=2) + "\n")
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return EXIT_FAIL
    header = ["claim_id", "status", "computed_margin", "required_margin", "precision_bits"]
    rows = [[r.claim_id, r.status, r.computed_margin, r.required_margin, r.precision_bits] for r in reports]
    lines = [f"{r.claim_id:<40} {r.status.upper():<4} margin={r.computed_margin:.6g} "
             f"required={r.required_margin:.3g}" for r in reports]
    n_fail = sum(not r.passed for r in reports)
    lines.append(f"{len(reports) - n_fail}/{len(reports)} claims pass at {args.bits} bits")
    _emit(args.format, doc, header, rows, lines, out)
    return EXIT_OK if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# figures
# ---------------------------------------------------------------------------


def cmd_figures(args, out) -> int:
    if args.id not in figures.FIGURE_IDS:
        raise UsageError(f"unknown figure id {args.id!r}; choose from {', '.join(figures.FIGURE_IDS)}")
    text = figures.to_csv(args.id)
    rows = figures.row_count(args.id)
    if args.out == "-":
        out.write(text)
        print(f"{rows} rows", file=sys.stderr)
        return EXIT_OK
    try:
        Path(args.out).write_text(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out.write(f"wrote {rows} rows to {args.out}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# reduce / empirical
# ---------------------------------------------------------------------------


def cmd_reduce(args, out) -> int:
    from . import reduction

    try:
        a = reduction.read_basis(args.input)
        if args.method == "kz":
            res = reduction.kz_reduce(a)
        else:
            res = reduction.lll(a, args.delta)
    except reduction.DimensionCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (reduction.BasisFormatError, reduction.RankDeficiencyError, ValueError) as exc:
        raise UsageError(str(exc)) from None

    n = res.rank
    r_nn = float(abs(res.r[-1, -1]))
    lam = res.shortest_length
    doc = {
        "method": args.method,
        "rank": n,
        "lambda": lam,
        "r_nn": r_nn,
        "r_11": float(abs(res.r[0, 0])),
        "reduced_basis": res.reduced_basis.tolist(),
        "transform": [[int(v) for v in row] for row in res.transform],
    }
    if lam is not None:
        doc["lambda2_over_rnn2"] = (lam / r_nn) ** 2
    if args.method == "kz":
        bound = kzconst.kz_best_upper(n)
        doc["bound"] = {"quantity": "lambda^2/r_nn^2", **bound.as_dict()}
        holds = doc["lambda2_over_rnn2"] <= bound.value * (1 + 1e-9)
    else:
        # the classical LLL guarantee r_11^2 <= (delta - 1/4)^-(n-1) lambda^2
        lll_bound = (1 / (args.delta - 0.25)) ** (n - 1)
        doc["bound"] = {"quantity": "r_11^2/lambda^2", "value": lll_bound, "method": "lll"}
        holds = lam is None or (res.r[0, 0] / lam) ** 2 <= lll_bound * (1 + 1e-9)
    doc["bound_holds"] = bool(holds)

    try:
        if args.out:
            reduction.write_basis(args.out, res.reduced_basis)
        if args.transform_out:
            reduction.write_basis(args.transform_out, np.array(res.transform, dtype=float))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL

    header = ["quantity", "value"]
    rows = [["lambda", lam], ["r_nn", r_nn]]
    if lam is not None:
        rows.append(["lambda2_over_rnn2", doc["lambda2_over_rnn2"]])
    rows.append(["bound(" + doc["bound"]["quantity"] + ")", doc["bound"]["value"]])
    lines = [f"method: {args.method}  rank: {n}",
             f"lambda: {_num(lam) or 'not computed'}",
             f"r_nn: {r_nn:.17g}"]
    if lam is not None:
        lines.append(f"lambda^2/r_nn^2: {doc['lambda2_over_rnn2']:.17g}")
    lines.append(f"bound on {doc['bound']['quantity']}: {doc['bound']['value']:.17g} "
                 f"({doc['bound']['method']}) {'holds' if holds else 'VIOLATED'}")
    if not args.out:
        lines.append("reduced basis:")
        lines += reduction.format_basis(res.reduced_basis).splitlines()
    if not args.transform_out:
        lines.append("transform:")
        lines += reduction.format_basis(np.array(res.transform, dtype=float)).splitlines()
    _emit(args.format, doc, header, rows, lines, out)
    return EXIT_OK if holds else EXIT_FAIL


def cmd_empirical(args, out) -> int:
    from .reduction import empirical_ratios

    try:
        stats = empirical_ratios(args.rank, args.trials, args.seed, args.entry_bound, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = stats.as_dict()
    keys = ["rank", "trials", "seed", "entry_bound", "draws", "kz_ratio_max", "kz_ratio_mean", "kz_bound",
            "hermite_ratio_max", "hermite_ratio_mean", "hermite_bound", "beta_ratio_max", "beta_ratio_mean",
            "beta_bound", "all_kz_reduced", "all_unimodular", "max_det_rel_error", "ok"]
    rows = [[k, doc[k]] for k in keys]
    lines = [f"rank {stats.rank}, {stats.trials} trials, seed {stats.seed}, entries in "
             f"[-{stats.entry_bound}, {stats.entry_bound}] ({stats.draws} draws)",
             f"lambda^2/r_nn^2:    max {stats.kz_ratio_max:.12g}  mean {stats.kz_ratio_mean:.12g}  "
             f"bound {stats.kz_bound:.12g}",
             f"lambda^2/det^(2/n): max {stats.hermite_ratio_max:.12g}  mean {stats.hermite_ratio_mean:.12g}  "
             f"bound {stats.hermite_bound:.12g}"]
    if stats.beta_ratio_max is not None:
        lines.append(f"beta ratio:         max {stats.beta_ratio_max:.12g}  mean {stats.beta_ratio_mean:.12g}  "
                     f"bound {stats.beta_bound:.12g}")
    lines.append(f"KZ reduced: {stats.all_kz_reduced}  unimodular: {stats.all_unimodular}  "
                 f"max det drift: {stats.max_det_rel_error:.3g}")
    lines += [f"violation: {v}" for v in stats.violations]
    lines.append("all samples within bounds" if stats.ok else "BOUND VIOLATED")
    _emit(args.format, doc, ["quantity", "value"], rows, lines, out)
    return EXIT_OK if stats.ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "structured"), default="text",
                        help="output format (structured = JSON)")

    parser = argparse.ArgumentParser(prog="latticebounds",
                                     description="Bounds on lattice constants and reduction experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="list the bounds on a constant")
    p.add_argument("constant", choices=tuple(_BOUND_DISPATCH))
    p.add_argument("--n", "--k", dest="n", type=int, help="rank n (hermite, kz) or k (schnorr, rankin)")
    p.add_argument("--method", help="restrict to one method")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", parents=[common], help="re-verify the numeric proof obligations")
    p.add_argument("--bits", type=int, default=256, help="working precision in bits (>= 64)")
    p.add_argument("--filter", help="substring or glob selecting claim ids")
    p.add_argument("--report", default="verify-report.json",
                   help="where to write the JSON report ('' to skip)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--margin-factor", type=float, default=10.0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figures", help="write the CSV data of a figure")
    p.add_argument("--id", required=True, help="fig1..fig5 or a single curve such as fig3a")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.set_defaults(func=cmd_figures)

    p = sub.add_parser("reduce", parents=[common], help="LLL- or KZ-reduce a basis file")
    p.add_argument("input", help="basis file ('m n' then m rows, or JSON with 'entries')")
    p.add_argument("--method", choices=("lll", "kz"), default="kz")
    p.add_argument("--delta", type=float, default=0.99, help="LLL parameter")
    p.add_argument("--out", help="write the reduced basis here")
    p.add_argument("--transform-out", help="write the unimodular transform here")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("empirical", parents=[common], help="KZ-reduce random bases and compare with bounds")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--entry-bound", type=int, default=50)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_empirical)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout (handy for tests and notebooks)."""
    buf = io.StringIO()
    code = main(list(argv), buf)
    return code, buf.getvalue()
