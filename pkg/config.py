from __future__ import annotations

import os
from contextlib import contextmanager
from threading import Lock
from typing import Iterator, Optional

from loguru import logger

from constants import DEFAULT_LOG_LEVEL, DEFAULT_RTOL, ENV_LOG_FILE, ENV_LOG_LEVEL, ENV_TOL


def _env_tolerance() -> Optional[float]:
    raw = os.getenv(ENV_TOL)
    if not raw:
        return None
    try:
        value = float(raw)
    except ValueError:
        logger.warning("Config: ignoring non-numeric {}={!r}", ENV_TOL, raw)
        return None
    if not value > 0:
        logger.warning("Config: ignoring non-positive {}={!r}", ENV_TOL, raw)
        return None
    return value


class Settings:
    """Process-wide numeric settings.

    The tolerance resolves from an explicit override, then ``QSEC_TOL``,
    then ``DEFAULT_RTOL``.
    """

    _instance: Optional["Settings"] = None
    _lock: Lock = Lock()

    def __init__(self, tol: Optional[float] = None):
        self.tol: float = tol or _env_tolerance() or DEFAULT_RTOL
        self.log_level: str = (os.getenv(ENV_LOG_LEVEL) or DEFAULT_LOG_LEVEL).upper()
        self.log_file: Optional[str] = os.getenv(ENV_LOG_FILE) or None

    @classmethod
    def get(cls) -> "Settings":
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = cls()
        return cls._instance

    @classmethod
    def reset(cls) -> None:
        with cls._lock:
            cls._instance = None

    def set_tolerance(self, tol: float) -> None:
        if not tol > 0:
            raise ValueError("tolerance must be positive")
        self.tol = float(tol)

    @contextmanager
    def override(self, *, tol: Optional[float] = None) -> Iterator["Settings"]:
        previous = self.tol
        if tol is not None:
            self.set_tolerance(tol)
        try:
            yield self
        finally:
            self.tol = previous


def resolve_tol(tol: Optional[float]) -> float:
    return Settings.get().tol if tol is None else float(tol)
