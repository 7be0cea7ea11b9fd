from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from config import resolve_tol
from errors import ShapeMismatch

# Dense real matrix; kept as a plain ndarray alias so numpy operators apply directly.
LinMap = np.ndarray

EPS = float(np.finfo(np.float64).eps)


def as_linmap(
    m, rows: Optional[int] = None, cols: Optional[int] = None, *, name: str = "matrix"
) -> LinMap:
    a = np.asarray(m, dtype=np.float64)
    if a.ndim == 1 and rows is not None and cols is not None and a.size == rows * cols:
        a = a.reshape(rows, cols)
    if a.ndim != 2:
        raise ShapeMismatch(f"{name} must be two-dimensional, got shape {a.shape}")
    if rows is not None and a.shape[0] != rows or cols is not None and a.shape[1] != cols:
        raise ShapeMismatch(f"{name} has shape {a.shape}, expected ({rows}, {cols})")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def rank_cutoff(sigma_max: float, shape: tuple[int, ...], tol: float, scale: float = 0.0) -> float:
    """Singular values at or below this count as zero."""
    floor = max(shape, default=0) * EPS
    return max(tol, floor) * max(sigma_max, scale)


def fix_signs(basis: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Flip columns so the first clearly nonzero coordinate is positive."""
    if basis.size == 0:
        return basis.copy()
    mags = np.abs(basis)
    big = mags > tol * np.maximum(mags.max(axis=0), 1.0)
    first = basis[big.argmax(axis=0), np.arange(basis.shape[1])]
    flip = big.any(axis=0) & (first < 0)
    return np.where(flip, -basis, basis)


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace of R^n held as an orthonormal column basis.

    ``tol`` is the relative rank tolerance the basis was computed with; results
    carry it so borderline dimensions can be audited.
    """

    ambient_dim: int
    basis: np.ndarray
    tol: float

    def __post_init__(self) -> None:
        if self.basis.ndim != 2 or self.basis.shape[0] != self.ambient_dim:
            raise ShapeMismatch(
                f"basis shape {self.basis.shape} does not match ambient dimension {self.ambient_dim}"
            )
        k = self.basis.shape[1]
        if k > self.ambient_dim:
            raise ShapeMismatch("basis has more columns than the ambient dimension")
        gram = self.basis.T @ self.basis
        slack = 10 * max(self.tol, self.ambient_dim * EPS) + 1e3 * EPS
        if k and np.abs(gram - np.eye(k)).max() > slack:
            raise ValueError("basis columns are not orthonormal")

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @classmethod
    def full(cls, n: int, tol: Optional[float] = None) -> "Subspace":
        return cls(n, np.eye(n), resolve_tol(tol))

    @classmethod
    def zero(cls, n: int, tol: Optional[float] = None) -> "Subspace":
        return cls(n, np.zeros((n, 0)), resolve_tol(tol))

    @classmethod
    def from_span(cls, vectors, tol: Optional[float] = None) -> "Subspace":
        """Orthonormal basis of the column span, rank decided by SVD."""
        tol = resolve_tol(tol)
        a = as_linmap(vectors, name="spanning set")
        n = a.shape[0]
        if a.size == 0:
            return cls.zero(n, tol)
        u, s, _ = scipy.linalg.svd(a, full_matrices=False, check_finite=False)
        rank = int(np.sum(s > rank_cutoff(s[0], a.shape, tol)))
        return cls(n, fix_signs(u[:, :rank]), tol)

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T

    def complement(self) -> "Subspace":
        from subspace.ops import kernel

        if self.dim == 0:
            return Subspace.full(self.ambient_dim, self.tol)
        return kernel(self.basis.T, self.tol)

    def residual(self, x) -> float:
        """Norm of the component of ``x`` (vector or columns) orthogonal to the space."""
        x = np.asarray(x, dtype=np.float64)
        return float(np.linalg.norm(x - self.basis @ (self.basis.T @ x)))

    def contains(self, x, atol: float) -> bool:
        return self.residual(x) <= atol
