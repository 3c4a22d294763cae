"""Command line front end.

Subcommands:

    run CONFIG       execute one experiment, write trajectory + report
    verify           run the built-in objective suite and audit every bound
    compare CONFIG   run several schedules from one start point
    bounds           print the bound tables for given problem constants

Exit codes: 0 success, 1 a bound or audit check failed, 2 bad usage or
bad configuration.
"""

from __future__ import annotations

import argparse
import math
import sys

from .bounds import BoundParams, contraction_bound, polyak_bound
from .config import ConfigError, apply_overrides, build_config, load_config
from .harness import (
    VERIFY_REGIMES,
    bound_tables,
    compare_schedules,
    comparison_text,
    report_text,
    run_experiment,
    verify_suite,
)
from .schedules import SCHEDULE_NAMES

# flag name -> (dotted config key, parser)
_FLOAT = float
_INT = int


def _bool_flag(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _vector_flag(text: str) -> list[float]:
    try:
        return [float(cell) for cell in text.split(",") if cell.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _float_or_inf(text: str) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from exc


_OVERRIDES = (
    # (flag, dotted key, type, help)
    ("--objective-kind", "objective.kind", str, "objective kind"),
    ("--objective-dimension", "objective.dimension", _INT, "problem dimension"),
    ("--objective-eigenvalues", "objective.eigenvalues", _vector_flag, "quadratic spectrum"),
    ("--objective-scale", "objective.scale", _FLOAT, "norm objective scale"),
    ("--objective-curvature", "objective.curvature", _FLOAT, "l1 composite curvature"),
    ("--objective-l1-weight", "objective.l1_weight", _FLOAT, "l1 composite weight"),
    ("--objective-offset", "objective.offset", _FLOAT, "additive offset (moves f_star)"),
    ("--objective-x-star", "objective.x_star", _vector_flag, "explicit minimizer"),
    ("--objective-x-star-random", "objective.x_star_random", _bool_flag, "draw x_star"),
    ("--run-t", "run.T", _INT, "iteration budget T"),
    ("--run-x0", "run.x0", _vector_flag, "explicit start point"),
    ("--run-x0-radius", "run.x0_radius", _FLOAT, "draw x0 in a ball around x_star"),
    ("--run-seed", "run.seed", _INT, "PCG64 seed"),
    ("--run-record-points", "run.record_points", _bool_flag, "keep iterates in memory"),
    ("--schedule-name", "schedule.name", str, "step size schedule"),
    ("--schedule-f-tilde", "schedule.f_tilde", _FLOAT, "lower estimate for polyak-lb"),
    ("--schedule-eta", "schedule.eta", _FLOAT, "constant step size"),
    ("--schedule-alpha", "schedule.alpha", _FLOAT, "inv-t curvature"),
    ("--schedule-scale", "schedule.scale", _FLOAT, "inv-sqrt-t scale"),
    ("--adaptive-f-tilde0", "adaptive.f_tilde0", _FLOAT, "initial lower estimate"),
    ("--adaptive-epochs", "adaptive.epochs", _INT, "epoch count"),
    ("--adaptive-target", "adaptive.target", _FLOAT, "accuracy target for auto epochs"),
    ("--output-dir", "output.dir", str, "artifact directory"),
    ("--output-svg", "output.svg", _bool_flag, "emit trajectory.svg"),
    ("--output-audit-points", "output.audit_points", _INT, "moduli audit samples"),
)


def _add_override_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("config overrides")
    for flag, dotted, kind, help_text in _OVERRIDES:
        group.add_argument(flag, dest=dotted, type=kind, default=None, help=help_text)
    # short conveniences for the two most common overrides
    group.add_argument("-T", dest="run.T", type=int, default=None, help=argparse.SUPPRESS)
    group.add_argument("--seed", dest="run.seed", type=int, default=None, help=argparse.SUPPRESS)


def _config_from_args(args: argparse.Namespace):
    config = load_config(args.config)
    overrides = {dotted: getattr(args, dotted) for _, dotted, _, _ in _OVERRIDES}
    if any(value is not None for value in overrides.values()):
        raw = apply_overrides(config.raw, overrides)
        config = build_config(raw)
    return config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyakgd",
        description="gradient descent with Polyak step sizes, with every bound checked",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute one configured experiment")
    run_p.add_argument("config", help="path to a TOML experiment config")
    run_p.add_argument("--out", default=None, help="artifact directory (overrides output.dir)")
    run_p.add_argument("--quiet", action="store_true", help="suppress the text report on stdout")
    _add_override_flags(run_p)

    verify_p = sub.add_parser("verify", help="audit every guarantee on the built-in suite")
    verify_p.add_argument(
        "--regime",
        default="all",
        choices=("all",) + VERIFY_REGIMES,
        help="restrict to one objective regime",
    )
    verify_p.add_argument("--seed", type=int, default=20250815)
    verify_p.add_argument("--points", type=int, default=1000, help="moduli audit samples")

    cmp_p = sub.add_parser("compare", help="run several schedules from one start point")
    cmp_p.add_argument("config", help="path to a TOML experiment config")
    cmp_p.add_argument(
        "--schedules",
        default=",".join(SCHEDULE_NAMES),
        help="comma-separated schedule names (default: all)",
    )
    _add_override_flags(cmp_p)

    bounds_p = sub.add_parser("bounds", help="print the bound tables for given constants")
    bounds_p.add_argument("--G", type=_float_or_inf, required=True, help="subgradient norm bound")
    bounds_p.add_argument("--d0", type=_float_or_inf, required=True, help="start distance")
    bounds_p.add_argument("--alpha", type=_float_or_inf, default=0.0, help="strong convexity")
    bounds_p.add_argument("--beta", type=_float_or_inf, default=math.inf, help="smoothness")
    bounds_p.add_argument("-T", "--horizon", type=int, default=1, dest="T")
    bounds_p.add_argument("--gamma", type=float, default=1.0, help="descent fraction in (0, 1]")
    return parser


def _cmd_run(args) -> int:
    config = _config_from_args(args)
    report, _ = run_experiment(config, out_dir=args.out)
    if not args.quiet:
        sys.stdout.write(report_text(report))
    return 0 if report.passed else 1


def _cmd_verify(args) -> int:
    ok, lines = verify_suite(regime=args.regime, seed=args.seed, points=args.points)
    sys.stdout.write("\n".join(lines) + "\n")
    return 0 if ok else 1


def _cmd_compare(args) -> int:
    config = _config_from_args(args)
    names = [name.strip() for name in args.schedules.split(",") if name.strip()]
    if not names:
        raise ConfigError("no schedule names given")
    rows = compare_schedules(config, names)
    sys.stdout.write(comparison_text(rows))
    return 0


def _cmd_bounds(args) -> int:
    params = BoundParams(
        G=args.G, d0=args.d0, alpha=args.alpha, beta=args.beta, T=args.T, gamma=args.gamma
    )
    tables = bound_tables(params)
    exact = tables["exact_step"]
    contr = tables["contraction"]
    lines = [
        f"bound tables for G={args.G:g} d0={args.d0:g} alpha={args.alpha:g} "
        f"beta={args.beta:g} T={args.T} gamma={args.gamma:g}",
        f"{'case':<18}{'exact_step':>18}{'contraction':>18}",
    ]

    def cell(value):
        return f"{value:.6g}" if isinstance(value, float) else str(value)

    for case in ("convex", "smooth", "strongly_convex", "well_conditioned"):
        lines.append(f"{case:<18}{cell(exact[case]):>18}{cell(contr[case]):>18}")
    lines.append(f"{'bound_value':<18}{cell(exact['bound_value']):>18}{cell(contr['bound_value']):>18}")
    lines.append(f"{'active_case':<18}{exact['active_case']:>18}{contr['active_case']:>18}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "verify": _cmd_verify,
    "compare": _cmd_compare,
    "bounds": _cmd_bounds,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
