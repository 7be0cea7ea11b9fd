from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
import scipy.linalg
from loguru import logger

from constants import TRIVIAL_SECTIONS_MESSAGE
from errors import InvalidCount, WidthMismatch, ZeroSections
from qpca.dataset import Covariance, Dataset, covariance
from qpca.pencil import PencilResult, solve_pencil, tie_flags
from sections.pipeline import SectionSpace
from subspace.ops import kernel
from subspace.space import Subspace, fix_signs


@dataclass(frozen=True, eq=False)
class PCAResult:
    directions: np.ndarray
    eigenvalues: np.ndarray
    spectrum: np.ndarray
    ties: np.ndarray

    @property
    def r(self) -> int:
        return self.directions.shape[1]


@dataclass(frozen=True, eq=False)
class QuiverPCs:
    """Top principal components constrained to the space of sections.

    ``directions`` are the unit vectors ``F u_r`` in the total space,
    ``coefficients`` the pencil eigenvectors ``u_r`` and ``objective[k]`` the
    trace reached by the first ``k + 1`` directions.
    """

    sections: SectionSpace
    directions: np.ndarray
    coefficients: np.ndarray
    eigenvalues: np.ndarray
    objective: np.ndarray
    ties: np.ndarray
    pencil: PencilResult

    @property
    def r(self) -> int:
        return self.directions.shape[1]

    @property
    def trace(self) -> float:
        return float(self.objective[-1]) if self.objective.size else 0.0


def _as_covariance(data: Union[Dataset, Covariance]) -> Covariance:
    return data if isinstance(data, Covariance) else covariance(data)


def _check_count(r: int, limit: int, what: str) -> int:
    if not isinstance(r, (int, np.integer)) or r < 0:
        raise InvalidCount(f"component count must be a non-negative integer, got {r!r}")
    if r > limit:
        raise InvalidCount(f"asked for {r} components but the {what} has dimension {limit}")
    return int(r)


def _top(values: np.ndarray, vectors: np.ndarray, r: int) -> PCAResult:
    values, vectors = values[::-1], fix_signs(vectors[:, ::-1])
    return PCAResult(vectors[:, :r], values[:r], values, tie_flags(values)[:r])


def ordinary_pca(s: Union[Dataset, Covariance], r: int) -> PCAResult:
    cov = _as_covariance(s)
    r = _check_count(r, cov.n, "data space")
    values, vectors = scipy.linalg.eigh(cov.matrix)
    return _top(values, vectors, r)


def quiver_pca(data: Union[Dataset, Covariance], sec: SectionSpace, r: int) -> QuiverPCs:
    """Principal components of ``data`` among vectors in the space of sections.

    Solves ``F^T S F u = lambda F^T F u``; the directions are ``F u`` for the
    ``r`` largest eigenvalues.
    """
    if sec.section_dim == 0:
        raise ZeroSections(TRIVIAL_SECTIONS_MESSAGE)
    cov = _as_covariance(data)
    if cov.n != sec.total_dim:
        raise WidthMismatch(f"data has {cov.n} columns, total space has dimension {sec.total_dim}")
    r = _check_count(r, sec.section_dim, "space of sections")

    f = sec.embedding
    a = f.T @ cov.matrix @ f
    b = f.T @ f
    pencil = solve_pencil((a + a.T) / 2, (b + b.T) / 2)

    coefficients = pencil.eigenvectors[:, :r]
    directions = f @ coefficients
    norms = np.linalg.norm(directions, axis=0)
    directions = directions / np.where(norms > 0, norms, 1.0)
    eigenvalues = pencil.eigenvalues[:r]
    ties = pencil.ties[:r]
    if ties.any():
        logger.warning(
            "PCA: eigenvalue ties among the top {} components; directions are not unique", r
        )
    return QuiverPCs(sec, directions, coefficients, eigenvalues, np.cumsum(eigenvalues), ties, pencil)


def projection_matrix(f) -> np.ndarray:
    """``B = F F^T``."""
    f = np.asarray(f, dtype=np.float64)
    return f @ f.T


def constrained_pca(s: Union[Dataset, Covariance], w, r: int) -> PCAResult:
    """Maximise ``tr(X^T S X)`` over orthonormal ``X`` with ``W^T X = 0``."""
    cov = _as_covariance(s)
    if isinstance(w, Subspace):
        allowed = w.complement()
    else:
        w = np.asarray(w, dtype=np.float64).reshape(cov.n, -1)
        allowed = kernel(w.T) if w.size else Subspace.full(cov.n)
    if allowed.ambient_dim != cov.n:
        raise WidthMismatch(f"constraint lives in R^{allowed.ambient_dim}, data in R^{cov.n}")
    r = _check_count(r, allowed.dim, "feasible subspace")
    n_basis = allowed.basis
    if allowed.dim == 0:
        empty = np.zeros(0)
        return PCAResult(np.zeros((cov.n, 0)), empty, empty, np.zeros(0, dtype=bool))
    values, vectors = scipy.linalg.eigh(n_basis.T @ cov.matrix @ n_basis)
    result = _top(values, vectors, r)
    return PCAResult(
        fix_signs(n_basis @ result.directions), result.eigenvalues, result.spectrum, result.ties
    )
