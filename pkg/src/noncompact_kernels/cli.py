"""Command-line interface for noncompact-kernels.

Every command reads a JSON run configuration, applies flag overrides and
writes a CSV artifact whose first line is a '#'-prefixed JSON header holding
the command, the full configuration and the random-stream scheme.
"""

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler

from noncompact_kernels.errors import NoncompactKernelsError
from noncompact_kernels.experiments import COMMANDS, ExperimentTable
from noncompact_kernels.schemas import RunConfig
from noncompact_kernels.utils import is_debug, rng_provenance

console = Console(stderr=True)


def setup_logging() -> None:
    """Route library logging through rich when DEBUG is enabled."""
    if not is_debug():
        return
    logging.basicConfig(
        level=logging.DEBUG,
        format="%(message)s",
        handlers=[RichHandler(console=console, rich_tracebacks=True)],
    )


def format_cell(value: float | int | str) -> str:
    if isinstance(value, int | str):
        return str(value)
    return format(float(value), ".17g")


def render_table(command: str, config: RunConfig, table: ExperimentTable) -> str:
    """Render the header line, CSV body and footer comments."""
    header = {
        "command": command,
        "config": config.model_dump(mode="json"),
        "rng": rng_provenance(config.seed),
    }
    buffer = io.StringIO()
    buffer.write("# " + json.dumps(header, sort_keys=True) + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_cell(value) for value in row])
    for key, value in table.footer.items():
        buffer.write(f"# {key}: {format_cell(value)}\n")
    return buffer.getvalue()


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Load the JSON config and apply flag overrides, re-validating the result."""
    config = RunConfig.load(args.config)
    overrides = {
        key: value
        for key, value in (("seed", args.seed), ("space", args.space), ("method", args.method))
        if value is not None
    }
    if not overrides:
        return config
    return RunConfig.model_validate({**config.model_dump(mode="json"), **overrides})


def run_command(args: argparse.Namespace) -> int:
    """Run one experiment command.

    Returns:
        Exit code (0 for success, 1 for failure)
    """
    try:
        config = resolve_config(args)
        table = COMMANDS[args.command](config)
    except (NoncompactKernelsError, ValidationError) as e:
        console.print(f"[red]Error running {args.command}: {e}[/red]")
        return 1

    if table.issues:
        console.print("[red]Output failed sanity checks:[/red]")
        for issue in table.issues:
            console.print(f"  - {issue}")
        return 1

    text = render_table(args.command, config, table)
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text)
        console.print(f"[green]Wrote {len(table.rows)} rows to {args.out}[/green]")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noncompact-kernels",
        description="Heat and Matérn kernels on hyperbolic spaces and SPD matrices",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  noncompact-kernels kernel-eval --space h3 --seed 7
  noncompact-kernels error-curve --config runs/h2_heat.json --out h2_error.csv
  noncompact-kernels accept-rate --space spd2

Environment Variables:
  NCK_SEED=<int>        Default global seed
  NCK_NUM_FEATURES=<L>  Default number of features
  NCK_RUN_LOG=<path>    Append experiment steps to a JSONL log
  DEBUG=true/false      Enable verbose logging
        """,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        sub = subparsers.add_parser(name, help=(fn.__doc__ or "").strip().splitlines()[0])
        sub.add_argument("--config", type=Path, default=None, help="JSON run configuration")
        sub.add_argument("--seed", type=int, default=None, help="Global 64-bit seed")
        sub.add_argument("--out", type=Path, default=None, help="Output CSV path (stdout if omitted)")
        sub.add_argument("--space", default=None, help="h2, h3, ..., hN or spd2, ..., spdD")
        sub.add_argument("--method", choices=["rejection", "importance"], default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the CLI.

    Returns:
        Exit code
    """
    args = build_parser().parse_args(argv)
    setup_logging()
    return run_command(args)


if __name__ == "__main__":
    sys.exit(main())
