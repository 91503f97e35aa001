"""The main file containing the program's entrypoint."""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from magflow import APP_NAME, __version__
from magflow.commands import EXIT_CONFIG, cmd_orbits, cmd_oracle, cmd_simulate, cmd_verify
from magflow.compatibility_checks import float_precision_check, version_check
from magflow.logger import log


class MagflowArgumentParser(argparse.ArgumentParser):
    """Exits with code 1 (configuration error) on usage errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = MagflowArgumentParser(
        prog=APP_NAME,
        description="Simulate and verify magnetic geodesic flows on hypersurfaces and surfaces of revolution.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--debug", "-debug", action="store_true", help="Log at DEBUG level.")
    sub = parser.add_subparsers(dest="command", required=True)

    simulate = sub.add_parser("simulate", help="Integrate a configured system and write the trajectory CSV.")
    simulate.add_argument("config", help="Path to a JSON run configuration.")
    simulate.add_argument(
        "-o", "--output", help="Output CSV (default: output.path from the config, else stdout)."
    )

    verify = sub.add_parser("verify", help="Run the drift/identity/equivariance suite (exit 3 on violations).")
    verify.add_argument("config", help="Path to a JSON run configuration.")
    verify.add_argument("-o", "--output", help="Output CSV (default: stdout).")
    verify.add_argument("--no-progress", action="store_true", help="Disable the progress bar.")

    orbits = sub.add_parser("orbits", help="Free-time actions of axis circle orbits on E(diag(a)).")
    orbits.add_argument("--a", type=float, nargs="+", required=True, help="Semi-axis data a_1 <= ... <= a_n.")
    orbits.add_argument("--omega", type=float, nargs="*", default=[], help="Orbit frequencies (non-zero).")
    orbits.add_argument("--axis", type=int, default=None, help="1-based axis (default: n).")
    orbits.add_argument("--samples", type=int, default=2049, help="Quadrature samples per orbit (>= 16).")
    orbits.add_argument("-o", "--output", help="Output CSV (default: stdout).")

    oracle = sub.add_parser("oracle", help="Compare the integrator with the closed-form sphere solution.")
    oracle.add_argument("config", help="Path to a JSON run configuration of a sphere system.")
    oracle.add_argument("-o", "--output", help="Output CSV (default: stdout).")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    version_check()
    float_precision_check()
    args = build_parser().parse_args(argv)
    if args.debug:
        log.setLevel(logging.DEBUG)

    if args.command == "simulate":
        return cmd_simulate(args.config, args.output)
    if args.command == "verify":
        return cmd_verify(args.config, args.output, progress=not args.no_progress)
    if args.command == "orbits":
        return cmd_orbits(args.a, args.omega, axis=args.axis, samples=args.samples, output=args.output)
    if args.command == "oracle":
        return cmd_oracle(args.config, args.output)
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
