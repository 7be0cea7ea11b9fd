from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from constants import CENTRED_TOL, SYMMETRY_TOL
from errors import NotCentred, WidthMismatch
from sections.representation import BlockLayout


@dataclass(frozen=True, eq=False)
class Dataset:
    """Samples as rows of an ``m x n`` matrix, columns ordered by vertex block."""

    samples: np.ndarray
    centred: bool = False
    layout: Optional[BlockLayout] = None

    def __post_init__(self) -> None:
        if self.samples.ndim != 2:
            raise ValueError(f"samples must form a matrix, got shape {self.samples.shape}")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("samples contain non-finite values")
        if self.layout is not None and self.layout.total != self.samples.shape[1]:
            raise WidthMismatch(
                f"dataset has {self.samples.shape[1]} columns, layout expects {self.layout.total}"
            )
        if self.centred and self.m:
            means = np.abs(self.samples.mean(axis=0))
            scale = np.maximum(np.abs(self.samples).max(axis=0), 1.0)
            if np.any(means > CENTRED_TOL * scale):
                raise NotCentred(f"column means up to {means.max():.3e} on data flagged as centred")

    @classmethod
    def from_samples(
        cls, samples, layout: Optional[BlockLayout] = None, center: bool = True
    ) -> "Dataset":
        x = np.array(samples, dtype=np.float64, ndmin=2)
        if center and x.shape[0]:
            x = x - x.mean(axis=0)
        return cls(x, centred=center, layout=layout)

    @property
    def m(self) -> int:
        return self.samples.shape[0]

    @property
    def n(self) -> int:
        return self.samples.shape[1]

    def block(self, v: int) -> np.ndarray:
        if self.layout is None:
            raise ValueError("dataset has no block layout")
        return self.samples[:, self.layout.slice(v)]


@dataclass(frozen=True, eq=False)
class Covariance:
    matrix: np.ndarray

    def __post_init__(self) -> None:
        s = self.matrix
        if s.ndim != 2 or s.shape[0] != s.shape[1]:
            raise ValueError(f"covariance must be square, got shape {s.shape}")
        scale = max(1.0, float(np.abs(s).max(initial=0.0)))
        if np.abs(s - s.T).max(initial=0.0) > SYMMETRY_TOL * scale:
            raise ValueError("covariance is not symmetric")
        if s.size and np.linalg.eigvalsh(s)[0] < -1e3 * s.shape[0] * np.finfo(float).eps * scale:
            raise ValueError("covariance is not positive semidefinite")

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def covariance(d: Dataset) -> Covariance:
    """``S = (1/m) sum_i y_i y_i^T`` for centred samples."""
    if not d.centred:
        raise NotCentred("covariance needs mean-centred samples")
    if d.m == 0:
        raise ValueError("covariance of an empty dataset")
    x = d.samples
    s = x.T @ x / d.m
    return Covariance((s + s.T) / 2)
