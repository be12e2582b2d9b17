"""Command-line front end.

Every subcommand prints one JSON object on stdout (or writes CSV where
asked).  Errors go to stderr as {"error": code, "message": text}; exit code 2
means bad input and 3 means a certification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

from conemom import __version__
from conemom.asymptotics import excess_rows, fit_expansion
from conemom.classify import solve_c0, theorem_verdict
from conemom.errors import CertificationFailed, ConemomError
from conemom.exactalg import as_rational
from conemom.potential import build_table, grid
from conemom.profile import INF, BoundaryPreset, positivity_domain, profile
from conemom.toric import EXCLUSIVE, INCLUSIVE, certify, load_diagram
from conemom.verify import run_identity_suite


class UsageError(ConemomError):
    code = "UsageError"


# -- output -------------------------------------------------------------------


def _format(obj) -> str:
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if math.isfinite(obj):
            return format(obj, ".17g")
        return json.dumps("inf" if obj > 0 else ("-inf" if obj < 0 else "nan"))
    if isinstance(obj, (Fraction,)):
        return json.dumps(str(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_format(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_format(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON: insertion-ordered keys, floats with 17 digits."""
    return _format(obj)


def _emit(obj, out) -> None:
    out.write(dumps(obj) + "\n")


def _error(exc: BaseException, err) -> int:
    code = getattr(exc, "code", type(exc).__name__)
    err.write(dumps({"error": code, "message": str(exc)}) + "\n")
    return getattr(exc, "exit_code", 2)


# -- parsing helpers ------------------------------------------------------------


def parse_values(text: str, integer: bool = False) -> list[Fraction]:
    """``a``, ``a,b,c`` or ``a:b[:step]`` (inclusive, exact)."""
    text = text.strip()
    if not text:
        raise UsageError("empty value list")
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise UsageError(f"range must be a:b or a:b:step, got {text!r}")
        lo, hi = as_rational(parts[0]), as_rational(parts[1])
        step = as_rational(parts[2]) if len(parts) == 3 else Fraction(1)
        if step <= 0:
            raise UsageError(f"step must be positive, got {step}")
        if hi < lo:
            raise UsageError(f"empty range {text!r}")
        count = int((hi - lo) // step) + 1
        values = [lo + k * step for k in range(count)]
    else:
        values = [as_rational(v) for v in text.split(",")]
    if integer and any(v.denominator != 1 for v in values):
        raise UsageError(f"expected integers, got {text!r}")
    return values


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except ConemomError as exc:
        raise argparse.ArgumentTypeError(str(exc))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- commands -------------------------------------------------------------------


def _profile_from(args):
    tau0 = None if getattr(args, "tau0", None) is None else args.tau0
    return profile(args.m, args.kappa, args.c, args.bc, tau0)


def cmd_profile(args, out) -> int:
    pr = _profile_from(args)
    report = theorem_verdict(pr)
    _emit({"profile": pr.to_json(), "classification": report.to_json()}, out)
    return 0


def cmd_c0(args, out) -> int:
    res = solve_c0(args.m, args.kappa, BoundaryPreset.parse(args.bc), args.tol)
    _emit(res.to_json(), out)
    if not res.certificate.ok:
        raise CertificationFailed("c0 certificate did not verify")
    return 0


SWEEP_COLUMNS = (
    "m", "kappa", "c", "bc", "verdict", "complete", "einstein_alpha", "b",
    "order_at_zero", "order_at_b", "growth_degree", "t1_infinite", "t2_infinite", "error",
)


def sweep_row(task: tuple) -> dict:
    """One sweep row; errors become data so the sweep always completes."""
    m, kappa, c, bc = task
    row = dict.fromkeys(SWEEP_COLUMNS, "")
    row.update(m=m, kappa=str(kappa), c=str(c), bc=bc)
    try:
        rep = theorem_verdict(profile(m, kappa, c, bc))
    except ConemomError as exc:
        row["error"] = exc.code
        return row
    beh = rep.behavior
    row.update(
        verdict=rep.verdict.value,
        complete=rep.complete,
        einstein_alpha="" if rep.einstein is None else str(rep.einstein),
        b="inf" if beh.b == INF else format(float(beh.b), ".17g"),
        order_at_zero=beh.order_at_zero,
        order_at_b="" if beh.order_at_b is None else beh.order_at_b,
        growth_degree="" if beh.growth_degree is None else beh.growth_degree,
        t1_infinite=beh.t1_infinite,
        t2_infinite=beh.t2_infinite,
    )
    return row


def sweep_tasks(args) -> list[tuple]:
    ms = [int(v) for v in parse_values(args.m, integer=True)]
    if any(m < 1 for m in ms):
        raise UsageError("m must be ≥ 1")
    BoundaryPreset.parse(args.bc)
    if args.kappa is not None and (args.p is not None or args.k is not None):
        raise UsageError("give either --kappa or --p/--k, not both")
    if args.kappa is not None:
        kappas = parse_values(args.kappa)
    elif args.p is not None and args.k is not None:
        ps = parse_values(args.p, integer=True)
        ks = parse_values(args.k, integer=True)
        if any(v < 1 for v in ps + ks):
            raise UsageError("p and k must be positive")
        kappas = [2 * p / k for p in ps for k in ks]
    else:
        raise UsageError("need --kappa or both --p and --k")
    tasks = []
    for m in ms:
        for kappa in kappas:
            if args.c == "einstein":
                if args.bc == "cone":
                    cs = [(m + 1) * kappa]
                elif args.bc == "bundle":
                    cs = [(m + 1) * (kappa - 2)]
                else:
                    raise UsageError("--c einstein needs the cone or bundle preset")
            else:
                cs = parse_values(args.c)
            tasks.extend((m, kappa, c, args.bc) for c in cs)
    if not tasks:
        raise UsageError("sweep is empty")
    return tasks


def cmd_sweep(args, out) -> int:
    tasks = sweep_tasks(args)
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(sweep_row, tasks))  # map keeps input order
    else:
        rows = [sweep_row(t) for t in tasks]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _csv_cell(v) for k, v in r.items()})
        text = buf.getvalue()
    else:
        text = dumps({"columns": list(SWEEP_COLUMNS), "rows": rows}) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        _emit({"output": args.output, "rows": len(rows), "format": args.format}, out)
    else:
        out.write(text)
    return 0


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return v


def cmd_potential(args, out) -> int:
    pr = _profile_from(args)
    if pr.tau0 is None:
        raise ConemomError("profile is not positive near 0; nothing to integrate")
    b = positivity_domain(pr)
    tau_max = args.tau_max
    if tau_max is None:
        tau_max = 10.0 * float(pr.tau0) if b == INF else 0.9 * float(b)
    tau_min = args.tau_min if args.tau_min is not None else min(float(pr.tau0), tau_max) / 100.0
    table = build_table(pr, grid(tau_min, tau_max, args.samples, args.spacing), args.tol)
    summary = {
        "profile": pr.to_json(),
        "rows": len(table.samples),
        "quoted_error": table.quoted_error,
        "checks": table.checks,
    }
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            table.to_csv(fh)
        summary["csv"] = args.csv
        _emit(summary, out)
    else:
        data = table.to_json()
        _emit(data, out)
    if not table.ok:
        raise CertificationFailed(f"table invariants failed: {table.checks}")
    return 0


def cmd_toric(args, out) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read diagram {args.file!r}: {exc}")
    if not isinstance(data, dict):
        raise UsageError("diagram JSON must be an object")
    diag, xi = load_diagram(data)
    _emit(certify(diag, xi, args.reading).to_json(), out)
    return 0


def cmd_asympt(args, out) -> int:
    lo, hi = (float(v) for v in args.window.split(","))
    report = fit_expansion(args.m, (lo, hi), args.samples)
    if args.csv:
        rs = [lo * (hi / lo) ** (k / (args.samples - 1)) for k in range(args.samples)]
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(("r_tilde", "f", "excess"))
            for row in excess_rows(args.m, rs):
                w.writerow([format(v, ".17g") for v in row])
    data = report.to_json()
    data["exponent_error"] = report.exponent_error
    data["remainder_error"] = report.remainder_error
    _emit(data, out)
    return 0


def cmd_verify(args, out) -> int:
    checks = run_identity_suite(args.grid)
    passed = all(c.passed for c in checks.values())
    _emit({"grid": args.grid, "passed": passed,
           "checks": {k: v.to_json() for k, v in checks.items()}}, out)
    if not passed:
        raise CertificationFailed("identity suite failed")
    return 0


# -- parser -----------------------------------------------------------------------


def _add_profile_args(p, need_c: bool = True) -> None:
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--kappa", type=_rational, required=True)
    p.add_argument("--c", type=_rational, required=need_c, default=Fraction(0))
    p.add_argument("--bc", default="cone", help="cone | bundle | custom:v0,v1")
    p.add_argument("--tau0", type=_rational, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="conemom", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("profile", help="build and classify a profile")
    _add_profile_args(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("c0", help="critical scalar curvature with certificate")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--kappa", type=_rational, required=True)
    p.add_argument("--bc", default="cone", choices=["cone", "bundle"])
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_c0)

    p = sub.add_parser("sweep", help="classify a parameter grid")
    p.add_argument("--m", default="1", help="int, list or range a:b")
    p.add_argument("--kappa", default=None, help="list or range a:b:step")
    p.add_argument("--p", default=None, help="K = L^p; with --k gives kappa = 2p/k")
    p.add_argument("--k", default=None)
    p.add_argument("--c", default="0", help="list, range a:b:step, or 'einstein'")
    p.add_argument("--bc", default="cone")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("potential", help="sample t, F, G, s on a grid")
    _add_profile_args(p)
    p.add_argument("--tau-min", type=float, default=None)
    p.add_argument("--tau-max", type=float, default=None)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--spacing", choices=["log", "linear"], default="log")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("toric", help="toric diagram checks")
    tsub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = tsub.add_parser("check", help="validate a diagram JSON file")
    q.add_argument("file")
    q.add_argument("--reading", choices=[INCLUSIVE, EXCLUSIVE], default=INCLUSIVE)
    q.set_defaults(func=cmd_toric)

    p = sub.add_parser("asympt", help="fit the Ricci-flat potential expansion")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--window", default="10,100")
    p.add_argument("--samples", type=int, default=41)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_asympt)

    p = sub.add_parser("verify", help="run the exact identity suite")
    p.add_argument("--grid", choices=sorted(["default", "small"]), default="default")
    p.set_defaults(func=cmd_verify)
    return parser


VALUE_FLAGS = ("--m", "--kappa", "--c", "--p", "--k", "--tau0", "--bc")


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--c -3:0`` into ``--c=-3:0``; argparse would read -3:0 as a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_glue_negative_values(argv))
        return args.func(args, out)
    except ConemomError as exc:
        return _error(exc, err)
    except (ValueError, ArithmeticError) as exc:
        return _error(UsageError(str(exc)), err)


if __name__ == "__main__":
    sys.exit(main())
