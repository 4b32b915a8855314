"""Command-line entry point: ``python -m cli <command> [options]``.

Tables are written as CSV (``#`` comment lines, a header, 9 significant
digits) to stdout or atomically to ``--out``. Diagnostics go to stderr.
Exit codes: 0 success, 1 numerical or domain failure, 2 usage error.
"""

import argparse
import logging
import math
import sys
from typing import List, Optional

from pydantic import ValidationError

from constants import DEFAULT_TOL, FIGURE_IDS, MIN_GRID_STEPS
from dielectrics import (
    solve_discharge_closed_form,
    solve_discharge_gross,
    solve_discharge_ml,
    solve_discharge_volterra,
)
from errors import RelaxationError
from mittag_leffler import e_alpha, ml_eval
from models import CapacitorModel, Mode, Order, Resolvent
from tables import discharge_table, figure, table1, write_table
from verification import SUITES, report_line, run_suite

logger = logging.getLogger(__name__)

CAPACITOR_METHODS = ["ml", "closed-form", "gross", "volterra"]


def setup_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(asctime)s - %(levelname)s - %(message)s"))
    root = logging.getLogger()
    root.handlers = [handler]
    root.setLevel(level)


def order_value(text: str) -> float:
    try:
        alpha = float(text)
        Order(alpha=alpha)
    except (ValueError, ValidationError):
        raise argparse.ArgumentTypeError(f"order must satisfy 0 < alpha <= 1, got {text!r}")
    return alpha


def positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (value > 0):
        raise argparse.ArgumentTypeError(f"must be > 0, got {text!r}")
    return value


def non_negative_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (value >= 0):
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text!r}")
    return value


def step_count(text: str) -> int:
    try:
        steps = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if steps < MIN_GRID_STEPS:
        raise argparse.ArgumentTypeError(f"must be >= {MIN_GRID_STEPS}, got {text!r}")
    return steps


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cli",
        description="Mittag-Leffler relaxation functions, spectra and imperfect-capacitor discharge.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logs")
    commands = parser.add_subparsers(dest="command", required=True)

    ev = commands.add_parser("eval", help="evaluate E_alpha(-x) or e_alpha(t)")
    ev.add_argument("--alpha", type=order_value, required=True)
    where = ev.add_mutually_exclusive_group(required=True)
    where.add_argument("--x", type=non_negative_float, help="argument of E_alpha(-x)")
    where.add_argument("--t", type=non_negative_float, help="time for e_alpha(t)")
    ev.add_argument("--tol", type=positive_float, default=DEFAULT_TOL)

    tb = commands.add_parser("table1", help="Mittag-Leffler values against the rational approximation")
    tb.add_argument("--out", default=None)
    tb.add_argument("--tol", type=positive_float, default=1e-10)

    fg = commands.add_parser("figure", help="data series for a figure")
    fg.add_argument("id", type=int, choices=FIGURE_IDS)
    fg.add_argument("--out", default=None)
    fg.add_argument("--tol", type=positive_float, default=1e-10)

    cap = commands.add_parser("capacitor", help="discharge or recharge of an imperfect capacitor")
    cap.add_argument("--C", dest="capacitance", type=positive_float, default=1.0)
    cap.add_argument("--R", dest="resistance", type=positive_float, default=1.0, help="'inf' for open terminals")
    cap.add_argument("--beta", type=non_negative_float, default=1.0)
    exponent = cap.add_mutually_exclusive_group()
    exponent.add_argument("--n", type=float, default=None, help="Schweidler exponent n in [0, 1]")
    exponent.add_argument("--p", type=float, default=None, help="fractional order p = 1 - n")
    cap.add_argument("--U0", type=float, default=1.0)
    cap.add_argument("--t0", type=non_negative_float, default=math.inf, help="charging time, 'inf' for full charge")
    cap.add_argument("--mode", choices=["discharge", "recharge"], default="discharge")
    cap.add_argument("--method", choices=CAPACITOR_METHODS, default="ml")
    cap.add_argument("--resolvent", choices=[r.value for r in Resolvent], default=Resolvent.mittag_leffler.value)
    cap.add_argument("--horizon", type=positive_float, default=1.0)
    cap.add_argument("--steps", type=step_count, default=100)
    cap.add_argument("--tol", type=positive_float, default=1e-8)
    cap.add_argument("--out", default=None)

    vf = commands.add_parser("verify", help="run a property suite")
    vf.add_argument("suite", choices=sorted(SUITES) + ["all"])
    return parser


def run_eval(args: argparse.Namespace) -> int:
    order = Order(alpha=args.alpha)
    if args.x is not None:
        result = ml_eval(order, args.x, args.tol)
    else:
        result = e_alpha(order, args.t, args.tol)
    print(f"value={result.value:.15g} method={result.method.value} err_estimate={result.err_estimate:.3e}")
    return 0


def run_table1(args: argparse.Namespace) -> int:
    write_table(table1(args.tol), args.out)
    return 0


def run_figure(args: argparse.Namespace) -> int:
    write_table(figure(args.id, args.tol), args.out)
    return 0


def capacitor_from_args(args: argparse.Namespace) -> CapacitorModel:
    if args.p is not None:
        n = 1.0 - args.p
    elif args.n is not None:
        n = args.n
    else:
        n = 0.9
    return CapacitorModel(
        capacitance=args.capacitance,
        resistance=args.resistance,
        beta=args.beta,
        n=n,
        U0=args.U0,
        t0=args.t0,
        mode=Mode.discharge if args.mode == "discharge" else Mode.recharge,
    )


def run_capacitor(args: argparse.Namespace) -> int:
    model = capacitor_from_args(args)

    if args.method == "ml":
        solution = solve_discharge_ml(model, args.horizon, args.steps, args.tol, Resolvent(args.resolvent))
    elif args.method == "closed-form":
        solution = solve_discharge_closed_form(model, args.horizon, args.steps)
    elif args.method == "gross":
        solution = solve_discharge_gross(model, args.horizon, args.steps)
    else:
        solution = solve_discharge_volterra(model, args.horizon, args.steps)

    comments = [f"k={model.k:.9g}, p={model.p:.9g}, lambda={model.lam:.9g}, A={model.rational_rate:.9g}"]
    write_table(discharge_table(solution, comments), args.out)
    return 0


def run_verify(args: argparse.Namespace) -> int:
    checks = run_suite(args.suite)
    for check in checks:
        print(report_line(check))
    return 0 if all(check.passed for check in checks) else 1


HANDLERS = {
    "eval": run_eval,
    "table1": run_table1,
    "figure": run_figure,
    "capacitor": run_capacitor,
    "verify": run_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)
    try:
        return HANDLERS[args.command](args)
    except RelaxationError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 1
    except ValidationError as e:
        logger.error(f"invalid parameters: {e}")
        return 1
    except OSError as e:
        logger.error(f"could not write output: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
