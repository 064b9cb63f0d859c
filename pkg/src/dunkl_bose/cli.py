import argparse
import sys
from pathlib import Path

import numpy as np
from rich.console import Console
from rich.table import Table

from dunkl_bose import __version__, lib, logger_utils
from dunkl_bose.config import settings
from dunkl_bose.errors import DomainError, NumericalError, PhaseError
from dunkl_bose.exact_spectrum import semiclassical_comparison
from dunkl_bose.models import GasSpec
from dunkl_bose.tables import (
    TableWriterFactory,
    classical_frame,
    comparison_metadata,
    fig1_frame,
    fig2_frame,
    sweep_frame,
)
from dunkl_bose.thermo import (
    critical_temperature,
    degeneracy_temperature,
    heat_capacity_above,
    heat_capacity_below,
    heat_capacity_jump_d3,
    homogeneous_map,
    normalized_jump,
    sweep,
    tc_saturation_limit,
    tc_saturation_ratio,
    validate_theta,
)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_NUMERICAL = 3

logger = logger_utils.get_logger(__name__)


def _console() -> Console:
    return Console(file=sys.stdout, highlight=False, markup=False, soft_wrap=True)


def _spec_from_args(args: argparse.Namespace) -> GasSpec:
    spec = GasSpec.build(d=args.dimension, theta=args.theta, n_particles=args.particles)
    if getattr(args, "homogeneous", False):
        spec = homogeneous_map(spec, args.hypervolume)

    return spec


def _emit(frame, metadata, args: argparse.Namespace) -> None:
    writer = TableWriterFactory.create_writer(args.format)
    text = writer.write(frame, metadata, out=args.out)
    if args.out is None:
        sys.stdout.write(text)


def cmd_tc(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    t_c = critical_temperature(spec)
    console = _console()
    if t_c is None:
        console.print("t_c no_transition")
        console.print("tc_ratio no_transition")

        return EXIT_OK

    console.print(f"t_c {lib.format_float(t_c)}")
    console.print(f"tc_ratio {lib.format_float(tc_saturation_ratio(spec))}")
    console.print(f"tc_ratio_limit {lib.format_float(tc_saturation_limit(spec.d))}")

    return EXIT_OK


def _sweep_grid(args: argparse.Namespace, t_reference: float) -> np.ndarray:
    scale = t_reference if args.relative else 1.0
    t_min = args.t_min if args.t_min is not None else (0.25 if args.relative else 0.25 * t_reference)
    t_max = args.t_max if args.t_max is not None else (2.5 if args.relative else 2.5 * t_reference)
    if not t_min > 0.0 or not t_max > t_min:
        raise DomainError(f"sweep needs 0 < t_min < t_max (got {t_min}, {t_max})")
    if args.steps < 2:
        raise DomainError(f"sweep needs steps >= 2 (got {args.steps})")

    return np.linspace(t_min * scale, t_max * scale, args.steps)


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    grid = _sweep_grid(args, degeneracy_temperature(spec))
    frame, metadata = sweep_frame(sweep(spec, grid, workers=args.workers))
    _emit(frame, metadata, args)

    return EXIT_OK


def cmd_fig1(args: argparse.Namespace) -> int:
    frame, metadata = fig1_frame(args.theta_min, args.theta_max, args.steps)
    _emit(frame, metadata, args)

    return EXIT_OK


def cmd_fig2(args: argparse.Namespace) -> int:
    grid = np.linspace(args.t_min, args.t_max, args.steps)
    frame, metadata = fig2_frame(args.thetas, grid, args.particles)
    _emit(frame, metadata, args)

    return EXIT_OK


def cmd_classical(args: argparse.Namespace) -> int:
    frame, metadata = classical_frame(args.dimension, args.theta, args.t_over_tc, args.particles)
    _emit(frame, metadata, args)

    return EXIT_OK


def cmd_validate_theta(args: argparse.Namespace) -> int:
    report = validate_theta(args.theta)
    console = _console()
    console.print(report.classification.value)
    console.print(report.message)

    return EXIT_OK


def cmd_exact_check(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    frame = semiclassical_comparison(spec, args.t_grid, z=args.z)
    _emit(frame, comparison_metadata(spec), args)

    return EXIT_OK


def cmd_jump(args: argparse.Namespace) -> int:
    spec = GasSpec.build(d=3.0, theta=args.theta, n_particles=args.particles)
    t_c = critical_temperature(spec)
    direct = heat_capacity_below(spec, t_c) - heat_capacity_above(spec, t_c)

    table = Table(title=f"Heat-capacity jump at t_c, d=3, theta={args.theta}")
    table.add_column("quantity")
    table.add_column("value", justify="right")
    table.add_row("delta_c", lib.format_float(heat_capacity_jump_d3(args.theta)))
    table.add_row("delta_c_direct", lib.format_float(direct))
    table.add_row("normalized", lib.format_float(normalized_jump(args.theta)))
    _console().print(table)

    return EXIT_OK


def _add_spec_arguments(parser: argparse.ArgumentParser, homogeneous: bool = True) -> None:
    parser.add_argument("-d", "--dimension", type=float, default=3.0, help="Spatial dimension d >= 1")
    parser.add_argument("--theta", type=float, default=0.0, help="Wigner parameter, theta > -1/2")
    parser.add_argument(
        "-N", "--particles", type=float, default=settings.DEFAULT_PARTICLES, help="Particle number N"
    )
    if homogeneous:
        parser.add_argument(
            "--homogeneous",
            action="store_true",
            help="Map the trapped gas to the homogeneous one (d -> d/2)",
        )
        parser.add_argument(
            "--hypervolume", type=float, default=1.0, help="Volume V_d recorded with --homogeneous"
        )


def _add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=["csv", "json"], default="csv", help="Table format")
    parser.add_argument("--out", type=Path, default=None, help="Output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dunkl-bose",
        description="Thermodynamics of the Dunkl-deformed, harmonically trapped ideal Bose gas.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at debug level to stderr")
    subparsers = parser.add_subparsers(dest="command", required=True)

    tc = subparsers.add_parser("tc", help="Critical temperature and its saturation ratio")
    _add_spec_arguments(tc)
    tc.set_defaults(handler=cmd_tc)

    sweep_parser = subparsers.add_parser("sweep", help="Thermodynamic state on a temperature grid")
    _add_spec_arguments(sweep_parser)
    sweep_parser.add_argument("--t-min", type=float, default=None)
    sweep_parser.add_argument("--t-max", type=float, default=None)
    sweep_parser.add_argument("--steps", type=int, default=100)
    sweep_parser.add_argument(
        "--relative", action="store_true", help="Read --t-min/--t-max in units of t_c"
    )
    sweep_parser.add_argument("--workers", type=int, default=None)
    _add_output_arguments(sweep_parser)
    sweep_parser.set_defaults(handler=cmd_sweep)

    fig1 = subparsers.add_parser("fig1", help="Normalized d=3 jump against theta")
    fig1.add_argument("--theta-min", type=float, default=settings.FIG1_THETA_MIN)
    fig1.add_argument("--theta-max", type=float, default=settings.FIG1_THETA_MAX)
    fig1.add_argument("--steps", type=int, default=settings.FIG1_STEPS)
    _add_output_arguments(fig1)
    fig1.set_defaults(handler=cmd_fig1)

    fig2 = subparsers.add_parser("fig2", help="d=2 heat capacity curves for several theta")
    fig2.add_argument("--thetas", type=float, nargs="+", default=list(settings.FIG2_THETAS))
    fig2.add_argument("--t-min", type=float, default=settings.FIG2_T_MIN, help="Lowest t / t_c")
    fig2.add_argument("--t-max", type=float, default=settings.FIG2_T_MAX, help="Highest t / t_c")
    fig2.add_argument("--steps", type=int, default=settings.FIG2_STEPS)
    fig2.add_argument("-N", "--particles", type=float, default=settings.DEFAULT_PARTICLES)
    _add_output_arguments(fig2)
    fig2.set_defaults(handler=cmd_fig2)

    classical = subparsers.add_parser("classical", help="Measured vs analytic classical coefficients")
    classical.add_argument("-d", "--dimension", type=float, default=3.0)
    classical.add_argument("--theta", type=float, nargs="+", default=[-0.4, -0.2, 0.0, 0.3, 0.5, 1.0, 2.0, 5.0])
    classical.add_argument("--t-over-tc", type=float, default=settings.CLASSICAL_MIN_T_OVER_TC)
    classical.add_argument("-N", "--particles", type=float, default=settings.DEFAULT_PARTICLES)
    _add_output_arguments(classical)
    classical.set_defaults(handler=cmd_classical)

    validate = subparsers.add_parser("validate-theta", help="Classify a Wigner parameter")
    validate.add_argument("theta", type=float)
    validate.set_defaults(handler=cmd_validate_theta)

    exact = subparsers.add_parser("exact-check", help="Exact level sums against the semiclassical result")
    _add_spec_arguments(exact, homogeneous=False)
    exact.add_argument("--t-grid", type=float, nargs="+", default=[10.0, 20.0, 50.0, 100.0])
    exact.add_argument("--z", type=float, default=None, help="Fixed fugacity (default: follow the gas)")
    _add_output_arguments(exact)
    exact.set_defaults(handler=cmd_exact_check)

    jump = subparsers.add_parser("jump", help="Heat-capacity discontinuity at t_c in d=3")
    jump.add_argument("--theta", type=float, default=0.0)
    jump.add_argument("-N", "--particles", type=float, default=settings.DEFAULT_PARTICLES)
    jump.set_defaults(handler=cmd_jump)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logger_utils.configure_logging("DEBUG" if args.verbose else settings.LOG_LEVEL)
    errors = Console(stderr=True, highlight=False, markup=False, soft_wrap=True)

    try:
        return args.handler(args)
    except (DomainError, PhaseError) as e:
        logger.error("Invalid input.", command=args.command, error=str(e))
        errors.print(f"error: {e}")

        return EXIT_DOMAIN
    except NumericalError as e:
        logger.error("Numerical failure.", command=args.command, error=str(e))
        errors.print(f"numerical error: {e}")

        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
