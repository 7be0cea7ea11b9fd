from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from loguru import logger

from config import resolve_tol
from errors import NotCentred, WidthMismatch
from graph.components import tarjan_msc
from graph.quiver import Quiver
from qpca.dataset import Dataset
from sections.representation import BlockLayout, Representation
from subspace.ops import pinv


@dataclass(frozen=True, eq=False)
class VertexData:
    """Per-vertex sample blocks ``Y_v`` (``m x dim_v``) sharing the sample count."""

    blocks: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        counts = {b.shape[0] for b in self.blocks}
        if len(counts) > 1:
            raise WidthMismatch(f"vertex blocks disagree on the sample count: {sorted(counts)}")

    @classmethod
    def from_dataset(cls, d: Dataset, dims: Sequence[int]) -> "VertexData":
        layout = BlockLayout(tuple(int(k) for k in dims))
        if layout.total != d.n:
            raise WidthMismatch(f"dataset has {d.n} columns, dimensions add up to {layout.total}")
        if not d.centred:
            raise NotCentred("edge maps are fitted on mean-centred samples")
        return cls(tuple(d.samples[:, layout.slice(v)] for v in range(len(layout.dims))))

    @property
    def m(self) -> int:
        return self.blocks[0].shape[0] if self.blocks else 0

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(b.shape[1] for b in self.blocks)


@dataclass(frozen=True, eq=False)
class FittedRepresentation:
    representation: Representation
    residuals: tuple[float, ...]

    @property
    def worst_residual(self) -> float:
        return max(self.residuals, default=0.0)


def fit_edge(ys: np.ndarray, yt: np.ndarray, tol: Optional[float] = None) -> tuple[np.ndarray, float]:
    """Least-squares map ``A`` with ``Y_t ~ Y_s A^T``, so ``A^T = Y_s^+ Y_t``.

    Rank-deficient ``Y_s`` gives the minimum-norm estimate.
    """
    a = (pinv(ys, tol) @ yt).T
    residual = float(np.linalg.norm(yt - ys @ a.T)) if yt.size else 0.0
    return a, residual


def fit_edge_maps(
    q: Quiver, vd: VertexData, workers: Optional[int] = None, tol: Optional[float] = None
) -> FittedRepresentation:
    """Fit every edge map independently; the result does not depend on ``workers``."""
    if len(vd.blocks) != q.n_vertices:
        raise WidthMismatch(f"{len(vd.blocks)} vertex blocks for {q.n_vertices} vertices")
    tol = resolve_tol(tol)

    def fit_one(edge_id: int) -> tuple[np.ndarray, float]:
        edge = q.edges[edge_id]
        return fit_edge(vd.blocks[edge.source], vd.blocks[edge.target], tol)

    edge_ids = range(q.n_edges)
    if workers and workers > 1 and q.n_edges > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            fitted = list(pool.map(fit_one, edge_ids))
    else:
        fitted = [fit_one(e) for e in edge_ids]

    maps = [a for a, _ in fitted]
    residuals = tuple(r for _, r in fitted)
    for e, residual in enumerate(residuals):
        logger.debug("Learn: edge {} fitted with residual {:.3e}", e, residual)
    if tarjan_msc(q):
        logger.info("Learn: quiver has cycles; edges were fitted independently")
    return FittedRepresentation(Representation.build(q, vd.dims, maps), residuals)
