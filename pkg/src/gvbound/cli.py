"""Command-line interface: curve sweeps, verification suites, point queries.

Subcommands:
    curve   evaluate bound curves over a parameter sweep, write CSV or SVG
    verify  run the self-check suites and print a pass/fail table
    point   print one full evaluation as a key-value block

All configuration is via flags; there is no config file.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import sticky, synthesis
from .curves import CurveSpec, build_curves, write_csv, write_svg
from .errors import GVBoundError
from .verify import run_suite

__all__ = ["main", "build_parser"]


def _parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"range must look like lo:hi:steps, got {text!r}"
        )
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad range {text!r}: {exc}") from None
    return lo, hi, steps


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gvbound",
        description=(
            "Gilbert-Varshamov, sphere-packing, and crude rate bounds for "
            "sticky-insertion and DNA-synthesis constrained channels."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    curve = sub.add_parser("curve", help="evaluate bound curves over a sweep")
    curve.add_argument("--channel", required=True, choices=("sticky", "synthesis"))
    curve.add_argument(
        "--bounds",
        default=None,
        help="comma-separated bounds (sticky: gv,sp,lb,capacity; "
        "synthesis: gv,lb,capacity); defaults to gv,sp,lb or gv,lb",
    )
    curve.add_argument("--beta-range", type=_parse_range, metavar="LO:HI:STEPS")
    curve.add_argument("--delta-range", type=_parse_range, metavar="LO:HI:STEPS")
    curve.add_argument("--rho", type=float, help="(unused by curve; see point)")
    curve.add_argument("--tau", type=float, help="cycle density for synthesis curves")
    curve.add_argument("--format", default="csv", choices=("csv", "svg"))
    curve.add_argument("--output", required=True, metavar="PATH")

    verify = sub.add_parser("verify", help="run the self-check suites")
    verify.add_argument(
        "suite", nargs="?", default="all", choices=("all", "acsv", "sticky", "synthesis")
    )
    verify.add_argument("--n-budget", type=int, default=8, metavar="N")
    verify.add_argument("--tolerance", type=float, default=1e-9, metavar="T")

    point = sub.add_parser("point", help="print one evaluation as key-value lines")
    point.add_argument("--channel", required=True, choices=("sticky", "synthesis"))
    point.add_argument("--rho", type=float)
    point.add_argument("--beta", type=float)
    point.add_argument("--tau", type=float)
    point.add_argument("--delta", type=float)

    return parser


def _fmt(value: float) -> str:
    return "%.12g" % value


def _cmd_curve(args: argparse.Namespace) -> int:
    if args.channel == "sticky":
        if args.beta_range is None:
            print("error: sticky curves need --beta-range lo:hi:steps", file=sys.stderr)
            return 2
        lo, hi, steps = args.beta_range
        bounds = tuple((args.bounds or "gv,sp,lb").split(","))
        spec = CurveSpec(
            channel="sticky",
            bounds=bounds,
            sweep_param="beta",
            lo=lo,
            hi=hi,
            steps=steps,
        )
    else:
        if args.delta_range is None:
            print("error: synthesis curves need --delta-range lo:hi:steps", file=sys.stderr)
            return 2
        if args.tau is None:
            print("error: synthesis curves need --tau", file=sys.stderr)
            return 2
        lo, hi, steps = args.delta_range
        bounds = tuple((args.bounds or "gv,lb").split(","))
        spec = CurveSpec(
            channel="synthesis",
            bounds=bounds,
            sweep_param="delta",
            lo=lo,
            hi=hi,
            steps=steps,
            fixed={"tau": args.tau},
        )
    curves = build_curves(spec)
    if args.format == "csv":
        write_csv(args.output, spec, curves)
    else:
        write_svg(args.output, spec, curves)
    print(f"wrote {len(curves)} curves x {steps} points to {args.output}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = run_suite(args.suite, n_budget=args.n_budget, tol=args.tolerance)
    width = max(len(f"{r.suite}: {r.name}") for r in results)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        failed += 0 if r.passed else 1
        print(f"{status}  {f'{r.suite}: {r.name}':<{width}}  {r.detail}")
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def _print_kv(key: str, value) -> None:
    if isinstance(value, float):
        print(f"{key} = {_fmt(value)}")
    else:
        print(f"{key} = {value}")


def _cmd_point_sticky(args: argparse.Namespace) -> int:
    if args.rho is None or args.beta is None:
        print("error: sticky points need --rho and --beta", file=sys.stderr)
        return 2
    rho, beta = args.rho, args.beta
    rows: list[tuple[str, object]] = [
        ("channel", "sticky"),
        ("rho", rho),
        ("beta", beta),
        ("capacity", sticky.capacity_runs(rho)),
    ]
    flags = []
    saturated = beta >= sticky.beta_max(rho)
    if 0.0 < beta and not saturated:
        cp = sticky.critical_point_closed_form(rho, 2.0 * beta)
        rows += [
            ("x_star", cp.x),
            ("y_star", cp.y),
            ("z_star", cp.z),
            ("residual_norm", cp.residual_norm),
        ]
    gv, rho_star = sticky.gv_rate(beta)
    rows += [
        ("ball_rate", sticky.ball_rate(rho, beta)),
        ("gv_rate", gv),
        ("gv_rho_star", rho_star),
        ("sp_rate", sticky.sp_rate(beta)),
        ("lb_rate", sticky.simple_lb_rate(beta)),
    ]
    if saturated:
        flags.append("saturated")
    if beta >= 0.25:
        flags.append("lb-boundary")
    rows.append(("flags", ";".join(flags)))
    for key, value in rows:
        _print_kv(key, value)
    return 0


def _cmd_point_synthesis(args: argparse.Namespace) -> int:
    if args.tau is None:
        print("error: synthesis points need --tau", file=sys.stderr)
        return 2
    tau = args.tau
    rows: list[tuple[str, object]] = [
        ("channel", "synthesis"),
        ("tau", tau),
        ("capacity", synthesis.capacity(tau)),
    ]
    if args.delta is None:
        rows.append(("flags", ""))
        for key, value in rows:
            _print_kv(key, value)
        return 0
    delta = args.delta
    rows.append(("delta", delta))
    flags = ["upper-bound"]
    saturated = False
    if tau < 2.5:
        dm, _ = synthesis.delta_max(tau)
        rows.append(("delta_max", dm))
        saturated = delta >= dm
        if 0.0 < delta < 1.0 and not saturated:
            cp = synthesis.critical_point(tau, delta)
            rows += [
                ("x_hat", cp.x),
                ("y_hat", cp.y),
                ("z_hat", cp.z),
                ("residual_norm", cp.residual_norm),
            ]
    ball = synthesis.ball_rate_upper(tau, delta)
    raw_gv = 2.0 * synthesis.capacity(tau) - ball
    rows += [
        ("ball_rate_upper", ball),
        ("gv_rate", synthesis.gv_rate(tau, delta)),
        ("lb_rate", synthesis.simple_lb_rate(tau, delta)),
    ]
    if saturated:
        flags.append("saturated")
    if raw_gv < 0.0:
        flags.append("floored")
    rows.append(("flags", ";".join(flags)))
    for key, value in rows:
        _print_kv(key, value)
    return 0


def _cmd_point(args: argparse.Namespace) -> int:
    if args.channel == "sticky":
        return _cmd_point_sticky(args)
    return _cmd_point_synthesis(args)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "curve":
            return _cmd_curve(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_point(args)
    except GVBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
