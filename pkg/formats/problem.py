from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence, Union

import numpy as np

from errors import ParseError
from graph.quiver import Quiver
from sections.representation import Representation


def _require(data: Mapping[str, Any], key: str, kind: type, where: str) -> Any:
    if key not in data:
        raise ParseError("missing field", f"{where}{key}" if where else key)
    value = data[key]
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise ParseError(f"expected {kind.__name__}, got {type(value).__name__}", f"{where}{key}")
    return value


def _matrix_from_dict(data: Any, where: str) -> np.ndarray:
    if not isinstance(data, Mapping):
        raise ParseError("expected an object with 'shape' and 'data'", where)
    shape = _require(data, "shape", list, f"{where}.")
    if len(shape) != 2 or not all(isinstance(k, int) and not isinstance(k, bool) and k >= 0 for k in shape):
        raise ParseError(f"shape must be two non-negative integers, got {shape}", f"{where}.shape")
    values = _require(data, "data", list, f"{where}.")
    rows, cols = shape
    if len(values) != rows * cols:
        raise ParseError(f"{len(values)} entries for shape {rows}x{cols}", f"{where}.data")
    for i, value in enumerate(values):
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ParseError(f"entry is not a number: {value!r}", f"{where}.data[{i}]")
    return np.array(values, dtype=np.float64).reshape(rows, cols)


def _matrix_to_dict(m: np.ndarray) -> dict[str, Any]:
    return {"shape": [int(k) for k in m.shape], "data": [float(x) for x in m.reshape(-1)]}


@dataclass
class EdgeSpec:
    name: str
    source: str
    target: str
    matrix: Optional[np.ndarray] = None

    @classmethod
    def from_dict(cls, data: Any, where: str) -> "EdgeSpec":
        if not isinstance(data, Mapping):
            raise ParseError("expected an edge object", where)
        matrix = data.get("matrix")
        return cls(
            name=str(data.get("name", "")),
            source=_require(data, "source", str, f"{where}."),
            target=_require(data, "target", str, f"{where}."),
            matrix=None if matrix is None else _matrix_from_dict(matrix, f"{where}.matrix"),
        )

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"name": self.name, "source": self.source, "target": self.target}
        if self.matrix is not None:
            doc["matrix"] = _matrix_to_dict(self.matrix)
        return doc


@dataclass
class ProblemFile:
    """A quiver with labelled vertices, vertex dimensions and (optionally) edge matrices."""

    vertices: list[str]
    dims: dict[str, int]
    edges: list[EdgeSpec] = field(default_factory=list)
    tol: Optional[float] = None
    description: str = ""

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for i, label in enumerate(self.vertices):
            if label in seen:
                raise ParseError(f"duplicate vertex label {label!r}", f"vertices[{i}]")
            seen.add(label)
        for label in self.vertices:
            if label not in self.dims:
                raise ParseError(f"no dimension for vertex {label!r}", f"dims.{label}")
            if self.dims[label] < 0:
                raise ParseError("dimension must be non-negative", f"dims.{label}")
        for label in self.dims:
            if label not in seen:
                raise ParseError(f"dimension given for unknown vertex {label!r}", f"dims.{label}")
        names: set[str] = set()
        for i, edge in enumerate(self.edges):
            if not edge.name:
                edge.name = f"e{i}"
            if edge.name in names:
                raise ParseError(f"duplicate edge name {edge.name!r}", f"edges[{i}].name")
            names.add(edge.name)
            for end in ("source", "target"):
                if getattr(edge, end) not in seen:
                    raise ParseError(f"unknown vertex {getattr(edge, end)!r}", f"edges[{i}].{end}")
        if self.tol is not None and not self.tol > 0:
            raise ParseError("tolerance must be positive", "tol")

    @classmethod
    def from_dict(cls, data: Any) -> "ProblemFile":
        if not isinstance(data, Mapping):
            raise ParseError("problem must be a JSON object", "$")
        vertices = _require(data, "vertices", list, "")
        for i, label in enumerate(vertices):
            if not isinstance(label, str):
                raise ParseError(f"vertex label must be a string, got {label!r}", f"vertices[{i}]")
        dims_raw = _require(data, "dims", dict, "")
        dims = {}
        for label, value in dims_raw.items():
            if not isinstance(value, int) or isinstance(value, bool):
                raise ParseError(f"dimension must be an integer, got {value!r}", f"dims.{label}")
            dims[label] = value
        edges_raw = data.get("edges", [])
        if not isinstance(edges_raw, list):
            raise ParseError("expected a list", "edges")
        tol = data.get("tol")
        if tol is not None and (not isinstance(tol, (int, float)) or isinstance(tol, bool)):
            raise ParseError(f"tolerance must be a number, got {tol!r}", "tol")
        return cls(
            vertices=list(vertices),
            dims=dims,
            edges=[EdgeSpec.from_dict(e, f"edges[{i}]") for i, e in enumerate(edges_raw)],
            tol=None if tol is None else float(tol),
            description=str(data.get("description", "")),
        )

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {}
        if self.description:
            doc["description"] = self.description
        doc["vertices"] = list(self.vertices)
        doc["dims"] = {label: int(self.dims[label]) for label in self.vertices}
        doc["edges"] = [e.to_dict() for e in self.edges]
        if self.tol is not None:
            doc["tol"] = self.tol
        return doc

    @classmethod
    def loads(cls, text: str, origin: str = "<string>") -> "ProblemFile":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, f"{origin}:{exc.lineno}:{exc.colno}") from exc
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ProblemFile":
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read problem file: {exc.strerror}", str(path)) from exc
        return cls.loads(text, str(path))

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def dump(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dumps() + "\n", encoding="utf-8")

    @property
    def index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.vertices)}

    @property
    def dim_tuple(self) -> tuple[int, ...]:
        return tuple(self.dims[label] for label in self.vertices)

    @property
    def has_matrices(self) -> bool:
        return all(e.matrix is not None for e in self.edges)

    def quiver(self) -> Quiver:
        index = self.index
        return Quiver.from_pairs(len(self.vertices), ((index[e.source], index[e.target]) for e in self.edges))

    def representation(self) -> Representation:
        """The representation described by the file; every edge needs a matrix."""
        for i, edge in enumerate(self.edges):
            if edge.matrix is None:
                raise ParseError("missing matrix (only 'learn' estimates matrices)", f"edges[{i}].matrix")
        return Representation.build(self.quiver(), self.dim_tuple, [e.matrix for e in self.edges])

    def with_matrices(self, maps: Sequence[np.ndarray]) -> "ProblemFile":
        if len(maps) != len(self.edges):
            raise ValueError(f"{len(maps)} matrices for {len(self.edges)} edges")
        edges = [replace(e, matrix=np.asarray(m, dtype=np.float64)) for e, m in zip(self.edges, maps)]
        return replace(self, edges=edges)

    def vertex_ids(self, labels: Sequence[str]) -> list[int]:
        index = self.index
        unknown = [label for label in labels if label not in index]
        if unknown:
            raise ParseError(f"unknown vertices {unknown}", "--restrict")
        return [index[label] for label in labels]
