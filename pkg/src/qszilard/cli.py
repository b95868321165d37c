"""Command-line front end.

Examples::

    qszilard compute --xi 1.0 --strategy isothermal --format json
    qszilard compute --mass 9.11e-31 --length 1e-9 --temperature 300
    qszilard sweep --xi-min 1e-6 --xi-max 1 --points 61 --strategy adiabatic --format csv
    qszilard spectrum --lambda 10 --levels 4
    qszilard limits --xi-min 1e-5 --xi-max 1e-2 --points 4

Exit status: 0 ok, 1 numerical/range or I/O error, 2 usage error.
``QSZ_TOL`` overrides the default series tolerance.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .config import Controls, xi_from_physical
from .cycle import STRATEGIES, quasistatic_path, run_cycle
from .errors import SzilardError
from .limits import QUANTITIES, bound_report, bound_reports_csv, classical_limit_check
from .spectrum import perturbed_spectrum


def _lambda_arg(text):
    if text.strip().lower() in ("inf", "infinite", "infinity"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number or 'inf', got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default="-", help="output path, '-' for stdout")
    common.add_argument("--tol", type=float, default=None, help="series tolerance (default 1e-12 or $QSZ_TOL)")
    common.add_argument("--quad-steps", type=int, default=1000)

    p = argparse.ArgumentParser(prog="qszilard", description="Quantum Szilard engine cycle calculator")
    sub = p.add_subparsers(dest="subcommand", required=True)

    c = sub.add_parser("compute", parents=[common], help="one cycle at one xi")
    c.add_argument("--xi", type=float)
    c.add_argument("--mass", type=float, help="particle mass in kg")
    c.add_argument("--length", type=float, help="well width in m")
    c.add_argument("--temperature", type=float, help="bath temperature in K")
    c.add_argument("--strategy", choices=STRATEGIES, default="isothermal")
    c.add_argument("--side", choices=("left", "right"), default="left")

    s = sub.add_parser("sweep", parents=[common], help="cycle totals on a log-spaced xi grid")
    s.add_argument("--xi-min", type=float, required=True)
    s.add_argument("--xi-max", type=float, required=True)
    s.add_argument("--points", type=int, required=True)
    s.add_argument("--strategy", choices=STRATEGIES, default="isothermal")
    s.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("spectrum", parents=[common], help="levels with a central delta barrier")
    sp.add_argument("--lambda", dest="lam", type=_lambda_arg, default=math.inf)
    sp.add_argument("--levels", type=int, default=8, help="number of level pairs")

    lm = sub.add_parser("limits", parents=[common], help="classical-limit table or bound table")
    lm.add_argument("--xi-min", type=float, required=True)
    lm.add_argument("--xi-max", type=float, required=True)
    lm.add_argument("--points", type=int, required=True)
    lm.add_argument("--quantity", choices=("classical",) + QUANTITIES, default="classical")
    p.set_defaults(_subparsers={"compute": c, "sweep": s, "spectrum": sp, "limits": lm})
    return p


def _controls(args, parser):
    tol = args.tol
    if tol is None:
        env = os.environ.get("QSZ_TOL")
        if env:
            try:
                tol = float(env)
            except ValueError:
                parser.error(f"QSZ_TOL must be a number, got {env!r}")
        else:
            tol = 1e-12
    if not (0 < tol <= 1e-3):
        parser.error(f"--tol must lie in (0, 1e-3], got {tol!r}")
    if args.quad_steps < 2:
        parser.error(f"--quad-steps must be >= 2, got {args.quad_steps}")
    return Controls(series_tol=tol, quad_steps=args.quad_steps)


def _grid(args, parser):
    if args.points < 2:
        parser.error(f"--points must be >= 2, got {args.points}")
    if not (args.xi_min > 0):
        parser.error(f"--xi-min must be positive, got {args.xi_min!r}")
    if not (args.xi_min < args.xi_max):
        parser.error("--xi-min must be smaller than --xi-max")
    return np.geomspace(args.xi_min, args.xi_max, args.points).tolist()


def _resolve_xi(args, parser):
    triple = (args.mass, args.length, args.temperature)
    given = [v is not None for v in triple]
    if args.xi is not None and any(given):
        parser.error("--xi conflicts with --mass/--length/--temperature; give one or the other")
    if args.xi is None:
        if not all(given):
            parser.error("give --xi or all of --mass, --length, --temperature")
        for flag, v in zip(("--mass", "--length", "--temperature"), triple):
            if not (v > 0 and math.isfinite(v)):
                parser.error(f"{flag} must be positive, got {v!r}")
        return xi_from_physical(*triple)
    if not (args.xi > 0 and math.isfinite(args.xi)):
        parser.error(f"--xi must be positive and finite, got {args.xi!r}")
    return args.xi


def _json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _compute(args, parser, controls):
    xi = _resolve_xi(args, parser)
    rep = run_cycle(xi, args.strategy, controls, side=args.side)
    if args.format == "csv":
        return rep.to_csv()
    out = rep.to_dict()
    if args.strategy == "isothermal":
        W, Q = quasistatic_path(xi, 0.5, 1.0, controls.quad_steps, controls)
        out["quasistatic_expand"] = {"W_kT": W, "Q_kT": Q, "quad_steps": controls.quad_steps}
    return _json(out)


def _sweep(args, parser, controls):
    grid = _grid(args, parser)
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as ex:
        reports = list(ex.map(lambda x: run_cycle(x, args.strategy, controls), grid))
    header = ["xi", "strategy", "W_tot_kT", "Q_tot_kT", "W1_kT", "delta_q_kB", "max_residual"]
    rows = [[repr(r.xi), r.strategy, repr(r.W_tot), repr(r.Q_tot), repr(r.W1), repr(r.delta_q), repr(r.max_residual())]
            for r in reports]
    if args.format == "csv":
        return _csv(header, rows)
    return _json({
        "strategy": args.strategy,
        "units": {"energy": "kT", "entropy": "kB"},
        "rows": [dict(zip(header, [r.xi, r.strategy, r.W_tot, r.Q_tot, r.W1, r.delta_q, r.max_residual()]))
                 for r in reports],
    })


def _spectrum(args, parser, controls):
    if args.levels < 1:
        parser.error(f"--levels must be >= 1, got {args.levels}")
    if args.lam < 0:
        parser.error(f"--lambda must be >= 0, got {args.lam!r}")
    spec = perturbed_spectrum(args.lam, args.levels, controls=controls)
    if args.format == "csv":
        return _csv(["n", "e_reduced", "parity"], [[lv.n, repr(lv.e_reduced), lv.parity] for lv in spec.levels])
    return _json(spec.to_dict())


def _limits(args, parser, controls):
    grid = sorted(_grid(args, parser), reverse=True)
    if args.quantity == "classical":
        table = classical_limit_check(grid, controls)
        return table.to_csv() if args.format == "csv" else _json(table.to_dict())
    reports = [bound_report(x, args.quantity, controls) for x in grid]
    if args.format == "csv":
        return bound_reports_csv(reports)
    rows = [{
        "xi": r.xi,
        "value": r.value,
        "lower": r.lower if r.lower is None or math.isfinite(r.lower) else None,
        "upper": r.upper if math.isfinite(r.upper) else None,
        "valid": r.bound_valid,
    } for r in reports]
    return _json({"quantity": args.quantity, "rows": rows})


_HANDLERS = {"compute": _compute, "sweep": _sweep, "spectrum": _spectrum, "limits": _limits}


def emit(text: str, destination: str = "-") -> None:
    """Write the report once, to a path or to stdout for '-'."""
    if destination in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(destination, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    parser = args._subparsers[args.subcommand]
    controls = _controls(args, parser)
    try:
        text = _HANDLERS[args.subcommand](args, parser, controls)
    except SzilardError as exc:
        print(f"qszilard: error: {exc}", file=sys.stderr)
        return 1
    try:
        emit(text, args.out)
    except OSError as exc:
        print(f"qszilard: error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
