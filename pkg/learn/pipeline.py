from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from loguru import logger

from graph.quiver import Quiver
from learn.fit import FittedRepresentation, VertexData, fit_edge_maps
from qpca.dataset import Dataset
from qpca.pca import QuiverPCs, quiver_pca
from sections.pipeline import PipelineTrace, sections


@dataclass(frozen=True, eq=False)
class LearnedPCs:
    pcs: QuiverPCs
    fitted: FittedRepresentation
    trace: PipelineTrace


def learn_then_pca(
    q: Quiver,
    dataset: Dataset,
    dims,
    r: int,
    tol: Optional[float] = None,
    workers: Optional[int] = None,
) -> LearnedPCs:
    """Fit the edge maps from ``dataset``, then take quiver PCs of the same data."""
    fitted = fit_edge_maps(q, VertexData.from_dataset(dataset, dims), workers=workers, tol=tol)
    sec, trace = sections(q, fitted.representation, tol=tol, workers=workers)
    logger.info("Learn: learned representation has {} independent sections", sec.d)
    return LearnedPCs(quiver_pca(dataset, sec, r), fitted, trace)
