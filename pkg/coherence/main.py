"""
Coherence Reasoner Entry Point
Runs a knowledge-base program and prints a text or JSON report.

Exit codes: 0 ok, 1 at least one query failed, 2 parse error.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

load_dotenv()

import config  # noqa: E402
from errors import ProgramSyntaxError  # noqa: E402
from logs import get_logger, set_level  # noqa: E402
from program import RunOptions, parse_program, run_program  # noqa: E402
from report import render_text  # noqa: E402

logger = get_logger("Main")

EXIT_OK = 0
EXIT_QUERY_FAILURE = 1
EXIT_PARSE_ERROR = 2


def _positive(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {raw}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coherence",
        description="Check p-consistency, p-entailment and probability bounds of a knowledge-base program.",
    )
    parser.add_argument("program", help="program file, or - for stdin")
    parser.add_argument("--json", action="store_true", help="emit the JSON report")
    parser.add_argument("--seed", type=int, default=config.SEARCH_CONFIG["seed"], help="search seed")
    parser.add_argument(
        "--budget", type=_positive, default=config.SEARCH_CONFIG["budget"], help="witness/counterexample samples"
    )
    parser.add_argument(
        "--grid", type=_positive, default=config.CERTIFICATE_CONFIG["grid"], help="certificate grid denominator"
    )
    parser.add_argument("--trace", action="store_true", help="include zero-layer traces")
    parser.add_argument("--log-level", default=config.LOG_CONFIG["level"], help="diagnostics level on stderr")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    set_level(args.log_level)

    try:
        text = sys.stdin.read() if args.program == "-" else Path(args.program).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        print(f"{args.program}: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    try:
        program = parse_program(text)
    except ProgramSyntaxError as exc:
        print(f"{args.program}: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR

    options = RunOptions(seed=args.seed, budget=args.budget, grid=args.grid, trace=args.trace)
    report = run_program(program, options)
    sys.stdout.write(report.to_json() + "\n" if args.json else render_text(report))
    if report.exit_code != EXIT_OK:
        logger.warning("%d of %d queries failed", sum(not r.success for r in report.results), len(report.results))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
