"""Command-line front end.

Subcommands: analyze, paper-examples, sweep, search, gen. Exit codes are
0 success/found, 1 search not found, 2 usage/parse, 3 validation,
4 guaranteed-property failure, 5 I/O.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .bounds import bounds_report, p_bound
from .corrmodel import (
    CorrelationMatrix,
    equicorrelation_spectrum,
    f_bound,
    off_diag_stats,
    r_p,
    validate_correlation,
)
from .errors import CorrDetError, InvalidExponent, ValidationError
from .explore import (
    SearchConfig,
    random_correlation,
    search_improvement_with_negative_r1,
    search_p_counterexample,
)
from .linalg import SymMatrix
from .majorization import verify_theorem1
from .sweep import CHECKS, run_sweep

EXIT_OK = 0
EXIT_NOT_FOUND = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_INTERNAL = 4
EXIT_IO = 5

SYMMETRY_TOL = 1e-9
PRINTED_TOL = 1e-3


class ParseError(CorrDetError, ValueError):
    pass


class NotSymmetric(ValidationError):
    pass


# --- serialization -------------------------------------------------------


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with floats written to 17 significant digits; dict order is kept.

    Non-finite floats become the strings "inf", "-inf" and "nan".
    """
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return {True: "true", False: "false", None: "null"}[obj]
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if math.isfinite(obj):
            text = fmt_float(obj)
            # keep integral values typed as floats for JSON readers
            return text if any(c in text for c in ".e") else text + ".0"
        return '"nan"' if math.isnan(obj) else ('"inf"' if obj > 0 else '"-inf"')
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in seq) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def parse_matrix_csv(text: str) -> SymMatrix:
    """Parse a header-less CSV square matrix and symmetrize it by averaging."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            rows.append([float(tok) for tok in line.split(",")])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if not rows:
        raise ParseError("empty matrix file")
    n = len(rows)
    for lineno, row in enumerate(rows, 1):
        if len(row) != n:
            raise ParseError(f"row {lineno} has {len(row)} entries, expected {n} (square matrix)")
    a = np.array(rows)
    if not np.all(np.isfinite(a)):
        raise ParseError("matrix has non-finite entries")
    asym = float(np.max(np.abs(a - a.T)))
    if asym > SYMMETRY_TOL:
        raise NotSymmetric(f"matrix is not symmetric (max |a_ij - a_ji| = {asym!r})")
    return SymMatrix(a)


def matrix_to_csv(a) -> str:
    a = np.asarray(a)
    return "".join(",".join(fmt_float(v) for v in row) + "\n" for row in a)


def read_matrix(path: str) -> SymMatrix:
    with open(path) as fh:
        return parse_matrix_csv(fh.read())


# --- reports -------------------------------------------------------------


def build_report(R: CorrelationMatrix, tol: float = 1e-9) -> dict:
    rep = bounds_report(R, tol)
    left, right = verify_theorem1(R, tol)
    s = rep.stats
    n = R.n
    slacks = list(left.slacks) + list(right.slacks)
    return {
        "n": n,
        "r1": s.r1,
        "r2": s.r2,
        "r_inf": s.r_inf,
        "det_R": rep.det_R,
        "det_Rtilde": rep.det_Rtilde,
        "det_Rhat": rep.det_Rhat,
        "det_Rbar": rep.det_Rbar,
        "olkin_holds": rep.olkin_holds,
        "sandwich_holds": rep.sandwich_holds,
        "improves_olkin": rep.improves_olkin,
        "theorem1": {
            "left_holds": left.holds,
            "right_holds": right.holds,
            "min_slack": min(slacks) if slacks else 0.0,
        },
        "spectra": {
            "R": list(R.spectrum.values),
            "Rhat": list(equicorrelation_spectrum(n, s.r2).values),
            "Rbar": list(equicorrelation_spectrum(n, -s.r2).values),
            "Rtilde": list(equicorrelation_spectrum(n, s.r1).values),
        },
    }


def guaranteed_ok(report: dict) -> bool:
    t1 = report["theorem1"]
    return report["olkin_holds"] and report["sandwich_holds"] and t1["left_holds"] and t1["right_holds"]


def format_table(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            for sub, v in value.items():
                lines.append((f"{key}.{sub}", v))
        else:
            lines.append((key, value))
    width = max(len(k) for k, _ in lines)

    def show(v):
        if isinstance(v, bool):
            return str(v).lower()
        if isinstance(v, float):
            return f"{v: .6f}"
        if isinstance(v, list):
            return "[" + ", ".join(f"{x:.6f}" for x in v) + "]"
        return str(v)

    return "\n".join(f"{k:<{width}}  {show(v)}" for k, v in lines)


# --- worked examples ---------------------------------------------------

WORKED_EXAMPLES = [
    {
        "name": "example-1-1",
        "matrix": [[1, 0, -0.5], [0, 1, 0.5], [-0.5, 0.5, 1]],
        "expected": {"det_R": 0.5, "r1": 0.0, "det_Rtilde": 1.0, "r2": 0.4082,
                     "det_Rhat": 0.6361, "improves_olkin": True},
    },
    {
        "name": "example-1-2",
        "matrix": [[1, -0.3, -0.3], [-0.3, 1, -0.5], [-0.3, -0.5, 1]],
        "expected": {"det_R": 0.48, "r1": -0.3667, "det_Rtilde": 0.4981, "r2": 0.3786,
                     "det_Rhat": 0.6785, "improves_olkin": False},
    },
    {
        "name": "example-2",
        "matrix": [[1, 0, 0.8], [0, 1, -0.5], [0.8, -0.5, 1]],
        "expected": {"r_inf": 0.8, "det_R": 0.11, "det_Rp_inf": 0.104, "p_inf_bound_holds": False},
    },
]


def evaluate_fixture(fixture: dict, tol: float = PRINTED_TOL) -> dict:
    R = validate_correlation(SymMatrix(fixture["matrix"]))
    rep = bounds_report(R)
    pinf = p_bound(R, math.inf)
    computed = {
        "det_R": rep.det_R,
        "r1": rep.stats.r1,
        "r2": rep.stats.r2,
        "r_inf": rep.stats.r_inf,
        "det_Rtilde": rep.det_Rtilde,
        "det_Rhat": rep.det_Rhat,
        "det_Rbar": rep.det_Rbar,
        "improves_olkin": rep.improves_olkin,
        "det_Rp_inf": pinf.det_Rp,
        "p_inf_bound_holds": pinf.bound_holds,
    }
    failed = []
    for key, want in fixture["expected"].items():
        got = computed[key]
        if isinstance(want, bool):
            ok = got is want
        else:
            ok = abs(got - want) <= tol
        if not ok:
            failed.append(key)
    return {
        "name": fixture["name"],
        "matrix": [list(map(float, row)) for row in fixture["matrix"]],
        "computed": computed,
        "expected": dict(fixture["expected"]),
        "failed": failed,
        "pass": not failed,
    }


def run_paper_examples(fixtures=None, tol: float = PRINTED_TOL) -> list[dict]:
    return [evaluate_fixture(f, tol) for f in (WORKED_EXAMPLES if fixtures is None else fixtures)]


def format_fixture(res: dict) -> str:
    out = [f"== {res['name']}: {'PASS' if res['pass'] else 'FAIL'}"]
    for row in res["matrix"]:
        out.append("   " + "  ".join(f"{v:6.2f}" for v in row))
    for key, got in res["computed"].items():
        want = res["expected"].get(key)
        shown = str(got).lower() if isinstance(got, bool) else f"{got:.6f}"
        line = f"   {key:<18} {shown:>10}"
        if want is not None:
            wshown = str(want).lower() if isinstance(want, bool) else f"{want:.4f}"
            mark = "FAIL" if key in res["failed"] else "ok"
            line += f"   printed {wshown:>8}  {mark}"
        out.append(line)
    return "\n".join(out)


# --- subcommands ---------------------------------------------------------


def cmd_analyze(args, out, err) -> int:
    try:
        A = read_matrix(args.file)
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_IO
    except ParseError as exc:
        print(f"ParseError: {exc}", file=err)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"{type(exc).__name__}: {exc}", file=err)
        return EXIT_VALIDATION
    try:
        R = validate_correlation(A)
    except ValidationError as exc:
        print(f"{type(exc).__name__}: {exc}", file=err)
        return EXIT_VALIDATION
    report = build_report(R, args.tol)
    print(dumps(report) if args.json else format_table(report), file=out)
    return EXIT_OK if guaranteed_ok(report) else EXIT_INTERNAL


def cmd_paper_examples(args, out, err, fixtures=None) -> int:
    results = run_paper_examples(fixtures)
    if args.json:
        print(dumps(results), file=out)
    else:
        print("\n\n".join(format_fixture(r) for r in results), file=out)
        passed = sum(r["pass"] for r in results)
        print(f"\n{passed}/{len(results)} fixtures PASS", file=out)
    return EXIT_OK if all(r["pass"] for r in results) else EXIT_INTERNAL


def cmd_sweep(args, out, err) -> int:
    if args.count < 1 or args.n_min < 2 or args.n_max < args.n_min:
        print("error: need count >= 1 and 2 <= n-min <= n-max", file=err)
        return EXIT_USAGE
    ns = range(args.n_min, args.n_max + 1)
    summary = run_sweep(ns, args.count, args.seed, args.tol)
    result = {
        "n_min": args.n_min,
        "n_max": args.n_max,
        "count_per_n": args.count,
        "seed": args.seed,
        "tol": args.tol,
        "matrices": summary.count,
        "failures": summary.total_failures,
        "failures_by_check": summary.failures,
        "worst_margin": summary.worst,
    }
    if args.json:
        print(dumps(result), file=out)
    else:
        print(f"matrices checked: {summary.count} (n = {args.n_min}..{args.n_max}, seed {args.seed})", file=out)
        for name in CHECKS:
            print(f"  {name:<20} failures {summary.failures[name]:>5}   worst margin {summary.worst[name]: .3e}", file=out)
        print(f"total failures: {summary.total_failures}", file=out)
    return EXIT_OK if summary.total_failures == 0 else EXIT_INTERNAL


def parse_p(text: str) -> float:
    if text.lower() in ("inf", "infinity", "∞"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid exponent {text!r}") from None


def cmd_search(args, out, err) -> int:
    try:
        cfg = SearchConfig(
            n=args.n, p=args.p, budget=args.budget, seed=args.seed,
            perturb_scale=args.perturb_scale, restarts=args.restarts,
        )
    except (ValueError, InvalidExponent) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    start = None
    if args.start:
        try:
            start = validate_correlation(read_matrix(args.start))
        except OSError as exc:
            print(f"error: {exc}", file=err)
            return EXIT_IO
        except ParseError as exc:
            print(f"ParseError: {exc}", file=err)
            return EXIT_USAGE
        except ValidationError as exc:
            print(f"{type(exc).__name__}: {exc}", file=err)
            return EXIT_VALIDATION
        if start.n != cfg.n:
            print(f"error: start matrix is {start.n}x{start.n} but --n is {cfg.n}", file=err)
            return EXIT_USAGE
    if args.task == "p-counterexample":
        res = search_p_counterexample(cfg, start)
    else:
        res = search_improvement_with_negative_r1(cfg, start)
    B = res.best_matrix
    stats = off_diag_stats(B)
    payload = {
        "task": args.task,
        "n": cfg.n,
        "p": cfg.p if args.task == "p-counterexample" else None,
        "budget": cfg.budget,
        "restarts": cfg.restarts,
        "seed": res.seed,
        "found": res.found,
        "objective": res.objective,
        "iterations_used": res.iterations_used,
        "r1": stats.r1,
        "r2": stats.r2,
        "r_inf": stats.r_inf,
        "best_matrix": [list(row) for row in B.entries],
    }
    if args.task == "p-counterexample":
        payload["det_Rp"] = f_bound(B.n, r_p(B, cfg.p))
    print(dumps(payload), file=out)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(matrix_to_csv(B.entries))
        except OSError as exc:
            print(f"error: {exc}", file=err)
            return EXIT_IO
    return EXIT_OK if res.found else EXIT_NOT_FOUND


def cmd_gen(args, out, err) -> int:
    if args.n < 2:
        print("error: n must be >= 2", file=err)
        return EXIT_USAGE
    text = matrix_to_csv(random_correlation(args.n, args.seed).entries)
    if args.out is None:
        out.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_IO
    return EXIT_OK


def u64(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"seed {v} outside the unsigned 64-bit range")
    return v


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted both before and after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable JSON output")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help="verdict tolerance (default 1e-9)")
    common.add_argument("--seed", type=u64, default=argparse.SUPPRESS,
                        help="64-bit RNG seed")

    parser = argparse.ArgumentParser(prog="corrdet", parents=[common],
                                     description="Determinant bounds for correlation matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="report bounds for a CSV matrix")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("paper-examples", parents=[common], help="reproduce the three worked examples")
    p.set_defaults(func=cmd_paper_examples)

    p = sub.add_parser("sweep", parents=[common], help="check guaranteed bounds on random matrices")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--count", type=int, default=1000, help="matrices per dimension")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("search", parents=[common], help="hill-climbing counterexample search")
    p.add_argument("task", choices=["p-counterexample", "negative-r1"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--p", type=parse_p, default=math.inf)
    p.add_argument("--budget", type=int, default=5000)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--perturb-scale", type=float, default=0.05)
    p.add_argument("--start", help="CSV matrix to start the first restart from")
    p.add_argument("--out", help="write the best matrix to this CSV path")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("gen", parents=[common], help="write a random correlation matrix as CSV")
    p.add_argument("n", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name, default in (("json", False), ("tol", 1e-9), ("seed", 0)):
        if not hasattr(args, name):
            setattr(args, name, default)
    return args.func(args, out, err)


if __name__ == "__main__":
    sys.exit(main())
