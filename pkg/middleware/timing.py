from __future__ import annotations

import time
from argparse import Namespace
from typing import Callable

from loguru import logger

from formats.report import ResultReport

Handler = Callable[[Namespace], ResultReport]


class TimingMiddleware:
    """Wraps a command handler, logging the call and recording its wall time in the report."""

    def __init__(self, label: str = "total"):
        self.label = label

    def __call__(self, handler: Handler, args: Namespace) -> ResultReport:
        command = getattr(args, "command", "?")
        logger.debug("CLI: running {}", command)
        start = time.perf_counter()
        try:
            report = handler(args)
        except Exception:
            logger.debug("CLI: {} failed after {:.3f} s", command, time.perf_counter() - start)
            raise
        elapsed = time.perf_counter() - start
        report.timing[self.label] = elapsed
        logger.info("CLI: {} finished in {:.3f} s", command, elapsed)
        return report
