"""Command-line entry point: `python -m cli check FILE [options]`"""

import argparse
import logging
import sys

from cli.report import render_json, render_text
from cli.run import DEFAULT_WORKERS, EXIT_LOAD_ERROR, OutputFormat, RunConfig, run
from kernel import DEFAULT_FUEL

LOG_FORMAT = "%(levelname)s - %(name)s - %(message)s"


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def check(args: argparse.Namespace) -> int:
    if args.verbose:
        level = logging.INFO
    elif args.quiet:
        level = logging.ERROR
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT)

    cfg = RunConfig(
        path=args.file,
        fuel=args.fuel,
        precedence=args.prec,
        output=OutputFormat.JSON if args.json else OutputFormat.TEXT,
        strict=args.strict,
        workers=args.workers,
        progress=not args.quiet and not args.json,
    )
    result = run(cfg)

    if cfg.output is OutputFormat.JSON:
        print(render_json(result))
    elif result.exit_code == EXIT_LOAD_ERROR:
        sys.stderr.write(render_text(result))
    else:
        sys.stdout.write(render_text(result))

    return result.exit_code


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="lampi-sr",
        description="Check that rewrite rules preserve typing.",
    )
    subparsers = parser.add_subparsers(required=True)

    parser_check = subparsers.add_parser("check", help="check every rule of a file")
    parser_check.add_argument("file", help="source file (.lp)")
    parser_check.add_argument(
        "--fuel",
        type=_positive,
        default=DEFAULT_FUEL,
        help=f"rewrite step budget per computation (default {DEFAULT_FUEL})",
    )
    parser_check.add_argument(
        "--prec",
        metavar="ORDER",
        help='re-order the default precedence, e.g. "$a > $b" or "^x > f"',
    )
    parser_check.add_argument("--json", action="store_true", help="JSON on stdout")
    parser_check.add_argument(
        "--strict",
        action="store_true",
        help="fail when anything had to be assumed",
    )
    parser_check.add_argument(
        "--workers",
        type=_positive,
        default=DEFAULT_WORKERS,
        help=f"rules checked in parallel (default {DEFAULT_WORKERS})",
    )
    verbosity = parser_check.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="log verdicts")
    verbosity.add_argument("--quiet", action="store_true", help="no progress bar")
    parser_check.set_defaults(func=check)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
