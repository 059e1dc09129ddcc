"""Command-line interface for ratchet_junction."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any

from dotenv import load_dotenv
from pydantic import ValidationError

from ratchet_junction import __version__
from ratchet_junction.config import Config, defaults
from ratchet_junction.core.constants import Command, DriveFamily, MapMode, OutputFormat
from ratchet_junction.models import RunConfig
from ratchet_junction.runner import EXIT_INVALID, describe_validation_error, load_run_config, run
from ratchet_junction.utils import LoggingControl

# Options that belong to the run, not to the command's parameter model
RUN_OPTIONS = ("output", "output_format", "jobs")


def _add_family(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=[f.value for f in DriveFamily], help="Drive family")


def _add_mode(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--mode",
        choices=[m.value for m in MapMode],
        help="closed-form (adiabatic) or ode (integrate the junction)",
    )


def _add_control(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("integration")
    group.add_argument("--dt", type=float, help="Maximum integration step")
    group.add_argument("--transient-periods", type=int, help="Drive periods discarded before averaging")
    group.add_argument("--average-periods", type=int, help="Drive periods averaged")


def _add_channel(parser: argparse.ArgumentParser) -> None:
    _add_family(parser)
    parser.add_argument("--theta", type=float, help="Relative phase (rad)")
    parser.add_argument("--alpha", type=float, help="Second-harmonic prefactor")
    parser.add_argument("--i0", type=float, help="Drive amplitude")
    parser.add_argument("--ic", type=float, help="Critical current")
    parser.add_argument("--omega", type=float, help="Drive frequency in units of the plasma frequency")
    parser.add_argument("--log-ratio-grid", help="Grid of log((1-zeta)/zeta), start:stop:count")
    parser.add_argument("--zeta-grid", help="Explicit zeta grid, start:stop:count (overrides --log-ratio-grid)")
    _add_control(parser)


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser.

    Subcommand options default to SUPPRESS so only flags given on the
    command line override parameters loaded with ``--config``.
    """
    parser = argparse.ArgumentParser(
        prog="ratchet-junction",
        description="Biharmonic drives, junction ratchets and photon-assisted shot noise",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable verbose output")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=Path, help="JSON run config or sidecar to reproduce a run")

    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("-o", "--output", type=Path, help="Data file path (default: output dir)")
    common.add_argument(
        "--format",
        dest="output_format",
        choices=[f.value for f in OutputFormat],
        help="Data file format",
    )
    common.add_argument("-j", "--jobs", type=int, help="Worker threads (overrides RATCHET_N_JOBS)")

    subparsers = parser.add_subparsers(dest="command", help="Command to execute")

    def add(command: Command, help_text: str) -> argparse.ArgumentParser:
        return subparsers.add_parser(
            command.value,
            help=help_text,
            parents=[common],
            argument_default=argparse.SUPPRESS,
        )

    wave = add(Command.WAVEFORM, "Sample one period of a drive and report its extrema")
    _add_family(wave)
    wave.add_argument("--zeta", type=float, help="Relative amplitude in [0, 1]")
    wave.add_argument("--alpha", type=float, help="Second-harmonic prefactor")
    wave.add_argument("--theta", type=float, help="Relative phase (rad)")
    wave.add_argument("--amplitude", type=float, help="Overall amplitude")
    wave.add_argument("--omega", type=float, help="Angular frequency")
    wave.add_argument("--samples", type=int, help="Samples per period")

    emap = add(Command.EFFICIENCY_MAP, "Diode efficiency over (alpha, zeta)")
    _add_family(emap)
    emap.add_argument("--theta", type=float, help="Relative phase (rad)")
    emap.add_argument("--alpha-grid", help="start:stop:count")
    emap.add_argument("--zeta-grid", help="start:stop:count")
    _add_mode(emap)
    emap.add_argument("--amplitude", type=float, help="Drive amplitude for ode mode")
    emap.add_argument("--omega", type=float, help="Drive frequency for ode mode")
    _add_control(emap)

    ivmap = add(Command.IV_MAP, "Mean voltage over (i_dc, zeta) with adiabatic channel overlay")
    _add_channel(ivmap)
    ivmap.add_argument("--i-dc-grid", help="dc bias grid, start:stop:count")

    channel = add(Command.CHANNEL, "Zero-voltage channel edges and efficiency along zeta")
    _add_channel(channel)
    _add_mode(channel)

    noise = add(Command.NOISE_SWEEP, "Zero-frequency shot noise along zeta")
    noise.add_argument("--total", type=float, help="Total drive strength eV_ac/(hbar Omega)")
    noise.add_argument("--q", type=float, help="Bias eV_dc/(hbar Omega)")
    noise.add_argument("--phi", type=float, help="Relative phase (rad)")
    noise.add_argument("--zeta-grid", help="start:stop:count within (0, 1)")
    noise.add_argument("--conductance", type=float, help="Conductance prefactor")
    noise.add_argument("--fano", type=float, help="Fano factor")

    return parser


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """Merge ``--config`` with explicit command-line flags.

    Raises:
        ValueError: If neither a command nor a config file is given, or
            they name different commands.
    """
    base = load_run_config(args.config) if args.config is not None else None
    flags: dict[str, Any] = {
        k: v for k, v in vars(args).items() if k not in ("verbose", "config", "command")
    }
    run_options = {k: flags.pop(k) for k in RUN_OPTIONS if k in flags}
    run_options.pop("jobs", None)

    if base is None:
        if args.command is None:
            raise ValueError("a command or --config is required")
        return RunConfig(command=Command(args.command), parameters=flags, **run_options)

    if args.command is not None and Command(args.command) is not base.command:
        raise ValueError(f"--config holds a {base.command.value} run, not {args.command}")
    merged = base.model_dump()
    merged["parameters"] = {**base.parameters, **flags}
    merged.update(run_options)
    return RunConfig.model_validate(merged)


def _join_grid_values(argv: list[str]) -> list[str]:
    """Attach grid values to their flag so a leading minus is not read as an option."""
    joined: list[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token.startswith("--") and token.endswith("-grid") and i + 1 < len(argv):
            joined.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        joined.append(token)
        i += 1
    return joined


def _print_summary(summary: dict[str, Any]) -> None:
    for key, value in summary.items():
        if isinstance(value, list):
            continue
        print(f"  {key}: {value}")


def main(argv: list[str] | None = None) -> int:
    """Main entry point for ratchet-junction CLI.

    Returns:
        Exit code (0 for success, 1 for a failed computation, 2 for
        invalid parameters).
    """
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(_join_grid_values(sys.argv[1:] if argv is None else argv))

    # Setup logging
    # Priority: -v flag (DEBUG) > RATCHET_LOG_LEVEL env var > default (INFO)
    if args.verbose:
        log_level = logging.DEBUG
    else:
        log_level = getattr(logging, defaults.get_log_level(), logging.INFO)

    config = Config()
    logging_control = LoggingControl()
    logging_control.setup_logging(
        enable_debug=(log_level == logging.DEBUG),
        log_to_file=config.log_to_file,
        log_file=config.log_file,
        minimal_console=(log_level > logging.DEBUG),
    )

    if args.command is None and args.config is None:
        parser.print_help()
        return 0

    try:
        run_config = build_run_config(args)
    except ValidationError as e:
        print("Invalid configuration:", file=sys.stderr)
        for message in describe_validation_error(e):
            print(f"  - {message}", file=sys.stderr)
        return EXIT_INVALID
    except (OSError, json.JSONDecodeError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INVALID

    jobs = getattr(args, "jobs", None)
    if jobs is not None:
        if jobs == 0:
            print("Invalid parameter 'jobs': must be nonzero", file=sys.stderr)
            return EXIT_INVALID
        config.n_jobs = jobs

    result = run(run_config, config)

    if result["success"]:
        print(f"Success! Data written to: {result['output_path']}")
        print(f"Run config saved to: {result['metadata_path']}")
        _print_summary(result["summary"])
        return 0

    print("Run failed:", file=sys.stderr)
    for error in result.get("errors", []):
        print(f"  - {error}", file=sys.stderr)
    return int(result["exit_code"])


if __name__ == "__main__":
    sys.exit(main())
