from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Mapping, Optional

import numpy as np

from constants import EXIT_OK
from errors import ParseError


def rows(m) -> list[list[float]]:
    """Nested float lists for a matrix; ``repr`` of each float round-trips exactly."""
    a = np.asarray(m, dtype=np.float64)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    return [[float(x) for x in row] for row in a]


def values(v) -> list[float]:
    return [float(x) for x in np.asarray(v, dtype=np.float64).reshape(-1)]


@dataclass
class ResultReport:
    """Everything a command produced, in a form that survives JSON unchanged.

    ``blocks`` holds the per-vertex blocks of ``F`` keyed by vertex label and
    ``directions`` the principal directions as rows of the total space.
    """

    command: str
    tol: float
    exit_code: int = EXIT_OK
    section_dim: Optional[int] = None
    total_dim: Optional[int] = None
    blocks: dict[str, list[list[float]]] = field(default_factory=dict)
    eigenvalues: list[float] = field(default_factory=list)
    directions: list[list[float]] = field(default_factory=list)
    ties: list[bool] = field(default_factory=list)
    residuals: dict[str, float] = field(default_factory=dict)
    stages: dict[str, int] = field(default_factory=dict)
    timing: dict[str, float] = field(default_factory=dict)
    provenance: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ResultReport":
        if not isinstance(data, Mapping):
            raise ParseError("report must be a JSON object", "$")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ParseError(f"unknown report fields {unknown}", "$")
        for required in ("command", "tol"):
            if required not in data:
                raise ParseError("missing field", required)
        return cls(**{key: data[key] for key in data})

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "ResultReport":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, f"report:{exc.lineno}:{exc.colno}") from exc
        return cls.from_dict(data)
