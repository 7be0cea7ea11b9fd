from __future__ import annotations

from typing import Mapping, Optional, Sequence, Union

import numpy as np
import scipy.linalg
from loguru import logger

from config import resolve_tol
from constants import RESIDUAL_TOL
from errors import DimensionMismatch, NotInvariant, ShapeMismatch
from graph.quiver import QuiverPath
from subspace.space import EPS, LinMap, Subspace, as_linmap, fix_signs, rank_cutoff

MapTable = Union[Mapping[int, LinMap], Sequence[LinMap]]


def kernel(m, tol: Optional[float] = None, scale: float = 0.0) -> Subspace:
    """Numerical null space of ``m``.

    Singular values at or below ``max(tol, max(shape)*eps) * max(sigma_max, scale)``
    count as zero. ``scale`` lets callers measure a difference of maps against
    the size of the maps themselves.
    """
    tol = resolve_tol(tol)
    a = as_linmap(m)
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return Subspace.full(cols, tol)
    _, s, vh = scipy.linalg.svd(a, full_matrices=True, check_finite=False)
    cutoff = rank_cutoff(s[0], a.shape, tol, scale)
    rank = int(np.sum(s > cutoff))
    margin = s[rank - 1] / max(cutoff, EPS) if rank else np.inf
    if 0 < margin < 10:
        logger.warning("Subspace: borderline rank {} (sigma {:.3e} near cutoff {:.3e})", rank, s[rank - 1], cutoff)
    return Subspace(cols, fix_signs(vh[rank:].T), tol)


def map_norm(m: LinMap) -> float:
    """Frobenius norm; an upper bound on the spectral norm that needs no SVD."""
    return float(np.linalg.norm(m)) if m.size else 0.0


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"subspaces live in R^{a.ambient_dim} and R^{b.ambient_dim}"
        )


def intersect(a: Subspace, b: Subspace, *more: Subspace, tol: Optional[float] = None) -> Subspace:
    spaces = (a, b, *more)
    for other in spaces[1:]:
        _check_ambient(a, other)
    proper = [s for s in spaces if not s.is_full()]
    if not proper:
        return Subspace.full(a.ambient_dim, resolve_tol(tol))
    if len(proper) == 1:
        return proper[0]
    eye = np.eye(a.ambient_dim)
    stacked = np.vstack([eye - s.projector() for s in proper])
    return kernel(stacked, tol, scale=1.0)


def equalise(domain: Subspace, maps: Sequence[LinMap], tol: Optional[float] = None) -> Subspace:
    """Largest subspace of ``domain`` on which every map agrees."""
    if not maps:
        raise ValueError("equaliser needs at least one map")
    first = as_linmap(maps[0], cols=domain.ambient_dim, name="map 0")
    target = first.shape[0]
    arrays = [first] + [
        as_linmap(f, target, domain.ambient_dim, name=f"map {i}") for i, f in enumerate(maps[1:], 1)
    ]
    if len(arrays) == 1 or domain.dim == 0:
        return domain
    restricted = [f @ domain.basis for f in arrays]
    differences = np.vstack([f - g for f, g in zip(restricted, restricted[1:])])
    # Measured against the unrestricted maps: restricted products can be pure round-off.
    scale = max(map_norm(f) for f in arrays)
    coords = kernel(differences, tol, scale=scale)
    return Subspace(domain.ambient_dim, fix_signs(domain.basis @ coords.basis), coords.tol)


def preimage(m, w: Subspace, tol: Optional[float] = None) -> Subspace:
    """``{x : m x in w}``."""
    a = as_linmap(m)
    if a.shape[0] != w.ambient_dim:
        raise ShapeMismatch(f"map has {a.shape[0]} rows but the subspace lives in R^{w.ambient_dim}")
    if w.is_full():
        return Subspace.full(a.shape[1], resolve_tol(tol))
    outside = a - w.basis @ (w.basis.T @ a)
    return kernel(outside, tol, scale=map_norm(a))


def compose_path(maps: MapTable, p: QuiverPath, dim: Optional[int] = None) -> LinMap:
    """``A_{e_k} ... A_{e_1}`` along ``p``; the empty path gives the identity on ``dim``."""
    if not p.edges:
        if dim is None:
            raise ValueError("identity of an empty path needs its dimension")
        return np.eye(dim)
    product = as_linmap(maps[p.edges[0]], name=f"edge {p.edges[0]}")
    if dim is not None and product.shape[1] != dim:
        raise ShapeMismatch(f"path starts in dimension {product.shape[1]}, expected {dim}")
    for e in p.edges[1:]:
        step = as_linmap(maps[e], name=f"edge {e}")
        if step.shape[1] != product.shape[0]:
            raise ShapeMismatch(f"edge {e} expects dimension {step.shape[1]}, got {product.shape[0]}")
        product = step @ product
    return product


def restrict(m, dom: Subspace, codom: Subspace) -> LinMap:
    """Coordinate matrix (dim codom x dim dom) of ``m`` restricted to ``dom``."""
    a = as_linmap(m, codom.ambient_dim, dom.ambient_dim, name="restricted map")
    image = a @ dom.basis
    residual = codom.residual(image) if image.size else 0.0
    if residual > RESIDUAL_TOL * map_norm(a) + 1e3 * EPS:
        raise NotInvariant(f"map leaves the target subspace (residual {residual:.3e})", residual)
    return codom.basis.T @ image


def pinv(m, tol: Optional[float] = None) -> LinMap:
    a = as_linmap(m)
    if a.size == 0:
        return np.zeros(a.shape[::-1])
    rtol = max(resolve_tol(tol), max(a.shape) * EPS)
    return scipy.linalg.pinv(a, atol=0.0, rtol=rtol)


def principal_angle_distance(a: Subspace, b: Subspace) -> float:
    """Sine of the largest principal angle; infinite when dimensions differ."""
    _check_ambient(a, b)
    if a.dim != b.dim:
        return float("inf")
    if a.dim == 0:
        return 0.0
    angles = scipy.linalg.subspace_angles(a.basis, b.basis)
    return float(np.sin(np.max(angles)))
