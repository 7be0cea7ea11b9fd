from pathlib import Path

import numpy as np
import pytest
from loguru import logger

from config import Settings
from formats.problem import ProblemFile

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    monkeypatch.delenv("QSEC_TOL", raising=False)
    Settings.reset()
    yield
    Settings.reset()


@pytest.fixture
def problems_dir() -> Path:
    return PROBLEMS


@pytest.fixture
def load_problem():
    def load(name: str) -> ProblemFile:
        return ProblemFile.load(PROBLEMS / f"{name}.json")

    return load


@pytest.fixture
def log_messages():
    """Messages logged through loguru while the test runs."""
    messages: list[str] = []
    handler_id = logger.add(lambda message: messages.append(message.record["message"]), level="DEBUG")
    yield messages
    logger.remove(handler_id)
