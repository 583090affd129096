"""
Freiheit CLI

Batch front end: reads a JSON payload, runs one certification or check, and
writes a JSON report with full provenance.

Exit status: 0 certified/consistent, 2 refuted/obstructed/inconclusive,
1 input or runtime error.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from freiheit import __version__
from freiheit.config import FreiheitConfig, load_config
from freiheit_cli import payload as io
from freiheit_cli.commands.interface import FreiheitCommand
from freiheit_cli.commands.registry import load_commands

logger = logging.getLogger(__name__)

EXIT_POSITIVE = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2


@dataclass
class JobSpec:
    """
    One invocation of the CLI.

    Attributes:
        command: Subcommand name
        payload: Parsed input object
        config: Effective configuration (file, environment, then flags)
        depth: Value of --depth, if given
        verify: Re-check a report instead of computing one
    """
    command: str
    payload: dict = field(default_factory=dict)
    config: FreiheitConfig = field(default_factory=FreiheitConfig)
    depth: int | None = None
    verify: bool = False

    def provenance(self) -> dict:
        return {
            "seed": self.config.seed,
            "depth": self.depth,
            "verify": self.verify,
            "config": self.config.to_dict(),
            "input": self.payload,
        }


def error_report(error: Exception, command: str | None = None) -> dict:
    return {
        "freiheit_version": __version__,
        "command": command,
        "error": {
            "type": type(error).__name__,
            "message": getattr(error, "detail", str(error)),
            "path": getattr(error, "path", None),
        },
        "exit_status": EXIT_ERROR,
    }


def run(job: JobSpec, commands: dict[str, FreiheitCommand] | None = None) -> tuple[dict, int]:
    """
    Run a job and build its report.

    The payload is validated against the command schema first ('verify' in
    verify mode). Errors become an error report with exit status 1.

    Returns:
        (report, exit status)
    """
    commands = commands if commands is not None else load_commands()
    try:
        command = commands.get(job.command)
        if command is None:
            raise io.PayloadError(
                f"Unknown command '{job.command}'. Must be one of: {', '.join(commands)}"
            )
        if not isinstance(job.payload, dict):
            raise io.PayloadError("Input must be a JSON object")
        io.validate("verify" if job.verify else job.command, job.payload)
        if job.depth is not None and not command.info.uses_depth:
            logger.warning(f"--depth has no effect on '{job.command}'")

        if job.verify:
            outcome = command.verify(job.payload, job.config)
        else:
            outcome = command.execute(job.payload, job.config, job.depth)
    except Exception as e:
        logger.error(f"{job.command} failed: {type(e).__name__}: {e}")
        logger.debug("Traceback", exc_info=True)
        return error_report(e, job.command), EXIT_ERROR

    status = EXIT_POSITIVE if outcome.positive else EXIT_NEGATIVE
    report = {
        "freiheit_version": __version__,
        "command": job.command,
        "provenance": job.provenance(),
        "result": outcome.result,
        "exit_status": status,
    }
    logger.info(f"{job.command} finished with exit status {status}")
    return report, status


def render(report: dict) -> str:
    """Byte-stable JSON rendering."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _read_input(name: str) -> str:
    if name == "-":
        return sys.stdin.read()
    try:
        return Path(name).read_text()
    except OSError as e:
        raise io.PayloadError(f"Cannot read input {name}: {e.strerror}") from e


def _write_output(name: str, text: str) -> None:
    if name == "-":
        sys.stdout.write(text)
    else:
        Path(name).write_text(text)


def build_parser(commands: dict[str, FreiheitCommand]) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default="-", help="Payload JSON file, '-' for stdin")
    common.add_argument("--out", default="-", help="Report JSON file, '-' for stdout")
    common.add_argument("--seed", type=int, help="Random seed (overrides config)")
    common.add_argument("--tol", type=float, help="Numeric tolerance (overrides config)")
    common.add_argument("--depth", type=int, help="Search depth for commands that take one")
    common.add_argument("--verify", action="store_true", help="Re-check a report given as 'report'")
    common.add_argument("--config", type=Path, help="Config file (default ~/.freiheit/config.yaml)")
    common.add_argument("--log-level", help="Logging level for stderr")

    parser = argparse.ArgumentParser(
        prog="freiheit",
        description="Certify freeness and independence of 2x2 matrix groups",
    )
    parser.add_argument("--version", action="version", version=f"freiheit {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, command in commands.items():
        subparsers.add_parser(name, parents=[common], help=command.info.description)
    schema = subparsers.add_parser("schema", help="Print the payload schema of a command")
    schema.add_argument("name", help="Command name, or 'verify'")
    return parser


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the freiheit command."""
    commands = load_commands()
    args = build_parser(commands).parse_args(argv)

    if args.command == "schema":
        try:
            sys.stdout.write(json.dumps(io.load_schema(args.name), indent=2) + "\n")
        except io.PayloadError as e:
            sys.stdout.write(render(error_report(e, "schema")))
            return EXIT_ERROR
        return EXIT_POSITIVE

    config = load_config(args.config)
    _configure_logging(args.log_level or config.run.log_level)
    if args.seed is not None:
        config.run.seed = args.seed
    if args.tol is not None:
        config.tolerances.numeric = args.tol

    try:
        payload = io.read_json(_read_input(args.input), args.input)
    except io.PayloadError as e:
        logger.error(str(e))
        report, status = error_report(e, args.command), EXIT_ERROR
    else:
        job = JobSpec(
            command=args.command,
            payload=payload,
            config=config,
            depth=args.depth,
            verify=args.verify,
        )
        report, status = run(job, commands)

    try:
        _write_output(args.out, render(report))
    except OSError as e:
        logger.error(f"Cannot write report to {args.out}: {e}")
        return EXIT_ERROR
    return status


if __name__ == "__main__":
    sys.exit(main())
