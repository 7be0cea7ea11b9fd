from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from loguru import logger

from config import resolve_tol
from constants import RESIDUAL_TOL
from graph.quiver import Quiver
from graph.sorting import top_sort
from sections.reduce import AcycReduction, acyc_reduce
from sections.replace import ArbReplacement, arb_replace
from sections.representation import BlockLayout, Representation, check_section
from subspace.ops import map_norm
from subspace.space import LinMap, Subspace


@dataclass(frozen=True, eq=False)
class SectionSpace:
    """Embedding ``F: R^d -> Tot`` whose image is the space of sections."""

    total_dim: int
    section_dim: int
    embedding: LinMap
    layout: BlockLayout
    provenance: tuple[str, ...]
    tol: float
    # Largest compatibility residual over the columns, when they were checked.
    residual: Optional[float] = None

    @property
    def n(self) -> int:
        return self.total_dim

    @property
    def d(self) -> int:
        return self.section_dim

    def block(self, v: int) -> LinMap:
        return self.embedding[self.layout.slice(v)]

    def image(self) -> Subspace:
        if self.section_dim == 0:
            return Subspace.zero(self.total_dim, self.tol)
        return Subspace.from_span(self.embedding, self.tol)

    def complement(self) -> Subspace:
        """Orthonormal basis of the orthogonal complement of the image."""
        return self.image().complement()


@dataclass(frozen=True, eq=False)
class PipelineTrace:
    acyclic: AcycReduction
    replacement: ArbReplacement

    @property
    def q_star(self) -> Quiver:
        return self.acyclic.quiver.quiver

    @property
    def q_plus(self) -> Quiver:
        return self.replacement.augmentation.quiver

    @property
    def t_plus(self) -> Quiver:
        return self.replacement.arborescence.tree().quiver

    @property
    def a_star(self) -> Representation:
        return self.acyclic.representation

    @property
    def a_plus(self) -> Representation:
        return self.replacement.representation

    @property
    def root_dim(self) -> int:
        return self.replacement.root_space.dim


def _provenance(acyclic: AcycReduction, replacement: ArbReplacement) -> tuple[str, ...]:
    notes = []
    trace = acyclic.trace
    for component, root, red in zip(trace.components, trace.roots, trace.reductions):
        terminal = sorted(component.edge_ids[e] for e in red.decomposition.terminal)
        notes.append(
            f"component root {root}: {len(red.decomposition.ears)} ears, terminal edges {terminal}"
        )
    tree_edges = [e for e in replacement.arborescence.edges if e < acyclic.quiver.quiver.n_edges]
    kept = sorted(acyclic.quiver.edge_ids[e] for e in tree_edges)
    notes.append(f"spanning tree keeps edges {kept}")
    return tuple(notes)


def sections(
    q: Quiver,
    rep: Representation,
    tol: Optional[float] = None,
    workers: Optional[int] = None,
    verify: bool = True,
) -> tuple[SectionSpace, PipelineTrace]:
    """Space of sections via acyclic reduction and arboreal replacement.

    With ``verify`` set, each column of the embedding is checked against every
    edge of the input, including the terminal edges dropped on the way.
    """
    tol = resolve_tol(tol)
    acyclic = acyc_reduce(q, rep, tol=tol, workers=workers, verify=verify)
    replacement = arb_replace(acyclic.quiver.quiver, acyclic.representation, tol=tol)

    root = replacement.root
    phi = replacement.root_space
    maps = replacement.representation.maps
    tree = replacement.arborescence
    local_edge = tree.tree().local_edge
    # Parents precede children in topological order; each block extends its parent.
    blocks = {root: phi.basis}
    for v in top_sort(tree.base):
        if v != root:
            e = tree.parent[v]
            blocks[v] = maps[local_edge[e]] @ blocks[tree.base.source(e)]
    embedding = np.vstack([blocks[v] for v in q.vertices]) if q.n_vertices else np.zeros((0, phi.dim))

    provenance = _provenance(acyclic, replacement)
    residual = None
    if verify and phi.dim:
        residual = max(check_section(rep, embedding[:, j]) for j in range(phi.dim))
        largest = max((map_norm(a) for a in rep.maps), default=1.0)
        scale = max(1.0, map_norm(embedding)) * max(1.0, largest)
        if residual > RESIDUAL_TOL * scale:
            logger.warning("Pipeline: section residual {:.3e} exceeds tolerance", residual)
            provenance += (f"section residual {residual:.3e} exceeds tolerance {RESIDUAL_TOL * scale:.3e}",)
    space = SectionSpace(rep.total_dim, phi.dim, embedding, rep.layout, provenance, tol, residual)
    logger.info("Pipeline: {} vertices, {} edges, d = {}", q.n_vertices, q.n_edges, space.section_dim)
    return space, PipelineTrace(acyclic, replacement)
