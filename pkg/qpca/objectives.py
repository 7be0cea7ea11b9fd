from __future__ import annotations

from typing import Optional, Union

import numpy as np

from constants import FEASIBILITY_TOL
from errors import Infeasible, ShapeMismatch, ZeroVector
from qpca.dataset import Covariance, Dataset, covariance
from qpca.pca import projection_matrix
from subspace.ops import kernel
from subspace.space import as_linmap

CovarianceLike = Union[Covariance, Dataset, np.ndarray]


def _matrix(s: CovarianceLike) -> np.ndarray:
    if isinstance(s, Covariance):
        return s.matrix
    if isinstance(s, Dataset):
        return covariance(s).matrix
    return as_linmap(s, name="covariance")


def _frame(x, rows: int, name: str) -> np.ndarray:
    a = np.asarray(x, dtype=np.float64)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2 or a.shape[0] != rows:
        raise ShapeMismatch(f"{name} must have {rows} rows, got shape {a.shape}")
    return a


def _require_identity(gram: np.ndarray, constraint: str, tol: float) -> None:
    if not gram.size:
        return
    violation = float(np.abs(gram - np.eye(gram.shape[0])).max())
    if violation > tol:
        raise Infeasible(f"{constraint} violated by {violation:.3e}", constraint, violation)


def objective_implicit(x, s: CovarianceLike, f=None, tol: float = FEASIBILITY_TOL) -> float:
    """``tr(X^T S X)`` for orthonormal ``X`` whose columns are sections.

    Without ``f`` only orthonormality is checked.
    """
    s = _matrix(s)
    x = _frame(x, s.shape[0], "X")
    _require_identity(x.T @ x, "X^T X = id", tol)
    if f is not None and x.size:
        f = _frame(f, s.shape[0], "F")
        outside = kernel(f.T) if f.size else None
        if outside is not None and outside.dim:
            violation = float(np.abs(outside.basis.T @ x).max())
            if violation > tol:
                raise Infeasible(
                    f"columns leave the space of sections by {violation:.3e}", "X in sections", violation
                )
    return float(np.trace(x.T @ s @ x))


def objective_param(y, f, s: CovarianceLike, tol: float = FEASIBILITY_TOL) -> float:
    """``tr(Y^T F^T S F Y)`` subject to ``Y^T F^T F Y = id``."""
    s = _matrix(s)
    f = _frame(f, s.shape[0], "F")
    y = _frame(y, f.shape[1], "Y")
    fy = f @ y
    _require_identity(fy.T @ fy, "Y^T F^T F Y = id", tol)
    return float(np.trace(fy.T @ s @ fy))


def objective_projected(z, f, s: CovarianceLike, tol: float = FEASIBILITY_TOL) -> float:
    """``tr(Z^T B S B Z)`` with ``B = F F^T``, subject to ``Z^T B^2 Z = id``."""
    s = _matrix(s)
    b = projection_matrix(_frame(f, s.shape[0], "F"))
    z = _frame(z, s.shape[0], "Z")
    bz = b @ z
    _require_identity(bz.T @ bz, "Z^T B^2 Z = id", tol)
    return float(np.trace(z.T @ (b @ s @ b) @ z))


def rayleigh(u, f, s: CovarianceLike) -> float:
    """``u^T F^T S F u / u^T F^T F u``."""
    s = _matrix(s)
    f = _frame(f, s.shape[0], "F")
    u = np.asarray(u, dtype=np.float64).reshape(-1)
    if u.shape[0] != f.shape[1]:
        raise ShapeMismatch(f"vector has length {u.shape[0]}, expected {f.shape[1]}")
    fu = f @ u
    denominator = float(fu @ fu)
    if not np.any(u) or denominator == 0.0:
        raise ZeroVector("Rayleigh quotient of the zero vector")
    return float(fu @ s @ fu) / denominator


def split_blocks(s: CovarianceLike, p: int) -> tuple[tuple[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]:
    """Split a covariance into ``((S_uu, S_uv), (S_vu, S_vv))`` after the first ``p`` coordinates."""
    m = _matrix(s)
    return (m[:p, :p], m[:p, p:]), (m[p:, :p], m[p:, p:])


def one_arrow_pencil(s_blocks, j) -> tuple[np.ndarray, np.ndarray]:
    """Pencil of the one-arrow quiver ``u -> v`` with map ``J``.

    ``A = S_uu + J^T S_vu + S_uv J + J^T S_vv J`` and ``B = id + J^T J``.
    """
    (suu, suv), (svu, svv) = s_blocks
    suu, suv, svu, svv = (np.asarray(m, dtype=np.float64) for m in (suu, suv, svu, svv))
    j = np.asarray(j, dtype=np.float64)
    p, q = suu.shape[0], svv.shape[0]
    expected = {"S_uu": (p, p), "S_uv": (p, q), "S_vu": (q, p), "S_vv": (q, q), "J": (q, p)}
    for name, (matrix, shape) in zip(expected, zip((suu, suv, svu, svv, j), expected.values())):
        if matrix.shape != shape:
            raise ShapeMismatch(f"{name} has shape {matrix.shape}, expected {shape}")
    a = suu + j.T @ svu + suv @ j + j.T @ svv @ j
    b = np.eye(p) + j.T @ j
    return a, b


def feasible_frame(f, r: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """Random orthonormal ``r``-frame inside the column span of ``F``."""
    rng = rng or np.random.default_rng()
    f = np.asarray(f, dtype=np.float64)
    mixed = f @ rng.standard_normal((f.shape[1], r))
    q, _ = np.linalg.qr(mixed)
    return q[:, :r]
