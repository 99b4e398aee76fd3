"""Command-line interface: ``hopso-vqe {run,diag,trace-export,presets}``."""

from __future__ import annotations

__all__ = ("main", "make_parser")

import argparse
import logging
import sys
from pathlib import Path
from typing import TYPE_CHECKING

from hopso.vqe._config import list_presets, load_experiment
from hopso.vqe._errors import ConfigurationError, HopsoVQEError
from hopso.vqe._hamiltonians import ground_state_energy, h2_hamiltonian, load_pauli_sum
from hopso.vqe._io import read_results, summary_table, trace_table, write_results
from hopso.vqe._vqe import run_experiment

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2


def cmd_run(args: argparse.Namespace) -> int:
    """Run an experiment and write its results file."""
    overrides = {
        "seed": args.seed,
        "runs": args.runs,
        "shots": args.shots,
        "parallel": args.parallel,
        "hamiltonian": None if args.hamiltonian is None else str(args.hamiltonian.resolve()),
    }
    config = load_experiment(args.config, overrides)
    out = args.out or Path(f"{Path(args.config).stem}.jsonl")

    logger.info(
        "running %d run(s) of %s on %d worker(s)",
        config.runs,
        type(config.optimizer).__name__,
        config.workers,
    )
    result = run_experiment(config)
    write_results(out, result, source=str(args.config))

    summary_table(result.summary).pprint(max_lines=-1, max_width=-1)
    if result.summary.ground_energy is not None:
        print(f"ground energy: {result.summary.ground_energy:.9f}")
    print(f"results written to {out}")
    return EXIT_OK


def cmd_diag(args: argparse.Namespace) -> int:
    """Print the smallest eigenvalue of a Hamiltonian."""
    source = args.hamiltonian
    h = h2_hamiltonian() if source == "h2" else load_pauli_sum(source)
    print(f"{ground_state_energy(h):.9f}")
    return EXIT_OK


def cmd_trace_export(args: argparse.Namespace) -> int:
    """Export per-iteration global-best values of a results file."""
    records = read_results(args.results).records
    table = trace_table(records)
    if args.out is None:
        table.write(sys.stdout, format=args.format)
    else:
        table.write(args.out, format=args.format, overwrite=True)
    return EXIT_OK


def cmd_presets(args: argparse.Namespace) -> int:
    """List the bundled presets."""
    print("\n".join(list_presets()))
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopso-vqe",
        description="Harmonic-oscillator PSO and baselines for VQE.",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run an experiment from a config file or preset.")
    run.add_argument("config", help="Config file path or bundled preset name.")
    run.add_argument("--seed", type=int, help="Base seed (run i uses seed + i).")
    run.add_argument("--runs", type=int, help="Number of independent runs.")
    run.add_argument("--shots", type=int, help="Shots per Pauli term, 0 for exact.")
    run.add_argument("--parallel", type=int, help="Concurrent runs, 0 for all cores.")
    run.add_argument("--out", type=Path, help="Results file (JSON lines).")
    run.add_argument("--hamiltonian", type=Path, help="Hamiltonian file to use.")
    run.set_defaults(func=cmd_run)

    diag = sub.add_parser("diag", help="Exact ground energy of a Hamiltonian.")
    diag.add_argument("hamiltonian", help="'h2' or a Hamiltonian file path.")
    diag.set_defaults(func=cmd_diag)

    export = sub.add_parser("trace-export", help="Convergence traces as a table.")
    export.add_argument("results", type=Path, help="Results file written by 'run'.")
    export.add_argument(
        "--format", default="ascii.basic", help="astropy table writer format."
    )
    export.add_argument("--out", type=Path, help="Output file, default stdout.")
    export.set_defaults(func=cmd_trace_export)

    presets = sub.add_parser("presets", help="List bundled presets.")
    presets.set_defaults(func=cmd_presets)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns the process exit code."""
    args = make_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        return int(args.func(args))
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (HopsoVQEError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
