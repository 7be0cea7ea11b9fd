import argparse
import sys
from typing import Optional, Sequence

from loguru import logger

from config import Settings
from constants import PROGRAM_NAME
from errors import QsecError
from handlers import get_commands
from middleware.timing import TimingMiddleware
from utils.text import render_report

LEVELS = ("WARNING", "INFO", "DEBUG")


def setup_logging(verbosity: int = 0) -> None:
    settings = Settings.get()
    level = settings.log_level
    if verbosity:
        level = LEVELS[min(verbosity, len(LEVELS) - 1)]
    logger.remove()
    logger.add(sys.stderr, level=level)
    if settings.log_file:
        logger.add(settings.log_file, rotation="1 day", compression="zip", level="DEBUG")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROGRAM_NAME,
        description="Spaces of sections of quiver representations and quiver-constrained PCA.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    handlers = {}
    for module in get_commands():
        module.register(subparsers)
        handlers[module.NAME] = module.handle
    parser.set_defaults(_handlers=handlers)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)
    handler = args._handlers[args.command]
    try:
        report = TimingMiddleware()(handler, args)
    except QsecError as exc:
        logger.error("{}: {}", type(exc).__name__, exc)
        return exc.exit_code
    print(report.to_json() if args.json else render_report(report))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
