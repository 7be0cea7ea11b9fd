from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from loguru import logger

from constants import MAX_CONDITION, SYMMETRY_TOL, TIE_TOL
from errors import NotPositiveDefinite, ShapeMismatch
from subspace.space import as_linmap, fix_signs


def tie_flags(eigenvalues: np.ndarray) -> np.ndarray:
    """``flags[i]`` is set when eigenvalue ``i`` and ``i + 1`` coincide within tolerance."""
    if eigenvalues.size < 2:
        return np.zeros(eigenvalues.size, dtype=bool)
    scale = max(1.0, float(np.abs(eigenvalues).max()))
    gaps = np.abs(np.diff(eigenvalues)) <= TIE_TOL * scale
    return np.append(gaps, False)


def _symmetric(m, name: str) -> np.ndarray:
    a = as_linmap(m, name=name)
    if a.shape[0] != a.shape[1]:
        raise ShapeMismatch(f"{name} must be square, got {a.shape}")
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if np.abs(a - a.T).max(initial=0.0) > SYMMETRY_TOL * scale * max(1, a.shape[0]):
        raise ValueError(f"{name} is not symmetric")
    return (a + a.T) / 2


@dataclass(frozen=True, eq=False)
class PencilResult:
    """Generalised eigenpairs of ``a - lambda b``, largest eigenvalue first.

    Columns of ``eigenvectors`` are ``b``-orthonormal.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    ties: np.ndarray
    condition: float

    def residual(self, a, b) -> float:
        if not self.eigenvalues.size:
            return 0.0
        a = np.asarray(a, dtype=np.float64)
        b = np.asarray(b, dtype=np.float64)
        u = self.eigenvectors
        return float(np.abs(a @ u - (b @ u) * self.eigenvalues).max())


def solve_pencil(a, b) -> PencilResult:
    """Symmetric-definite pencil by Cholesky whitening.

    With ``b = L L^T`` the pencil becomes the symmetric problem
    ``L^-1 a L^-T``; its eigenvectors map back through ``L^-T``.
    """
    a = _symmetric(a, "pencil matrix a")
    b = _symmetric(b, "pencil matrix b")
    if a.shape != b.shape:
        raise ShapeMismatch(f"pencil matrices have shapes {a.shape} and {b.shape}")
    d = a.shape[0]
    if d == 0:
        return PencilResult(np.zeros(0), np.zeros((0, 0)), np.zeros(0, dtype=bool), 1.0)

    condition = float(np.linalg.cond(b))
    if not np.isfinite(condition) or condition > MAX_CONDITION:
        raise NotPositiveDefinite(f"b is numerically singular (condition {condition:.3e})", condition)
    try:
        lower = scipy.linalg.cholesky(b, lower=True)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(f"b is not positive definite: {exc}", condition) from exc

    whitened = scipy.linalg.solve_triangular(lower, a, lower=True)
    whitened = scipy.linalg.solve_triangular(lower, whitened.T, lower=True).T
    whitened = (whitened + whitened.T) / 2
    values, vectors = scipy.linalg.eigh(whitened)
    values, vectors = values[::-1], vectors[:, ::-1]
    eigenvectors = fix_signs(scipy.linalg.solve_triangular(lower.T, vectors, lower=False))
    logger.debug("Pencil: size {}, condition {:.3e}, top eigenvalue {:.6g}", d, condition, values[0])
    return PencilResult(values, eigenvectors, tie_flags(values), condition)
