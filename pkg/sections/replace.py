from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg
from loguru import logger

from config import resolve_tol
from constants import RESIDUAL_TOL
from graph.quiver import Arborescence, Quiver
from graph.sorting import Augmentation, augment, spanning_arborescence, top_sort
from sections.representation import Representation
from subspace.ops import equalise, intersect, map_norm, preimage
from subspace.space import EPS, LinMap, Subspace


@dataclass(frozen=True, eq=False)
class ArbReplacement:
    """Arboreal replacement of a representation of an acyclic quiver.

    ``representation`` lives on ``arborescence.tree()``, whose vertices are
    those of the augmented quiver. Flow spaces are subspaces of the root
    space; flow maps send the root space to each vertex space.
    """

    augmentation: Augmentation
    arborescence: Arborescence
    representation: Representation
    flow_spaces: tuple[Subspace, ...]
    flow_maps: tuple[LinMap, ...]
    root_space: Subspace

    @property
    def root(self) -> int:
        return self.augmentation.root


def _carries(rep: Representation, e: int, tol: float) -> bool:
    """Whether edge ``e`` maps the source vertex space into the target vertex space.

    Flow maps follow the first incoming edge, so when it carries the spaces
    the flow space already lands in the target space.
    """
    q = rep.quiver
    a = rep.maps[e]
    image = a @ rep.space(q.source(e), tol).basis
    if image.size == 0:
        return True
    return rep.space(q.target(e), tol).residual(image) <= RESIDUAL_TOL * map_norm(a) + 1e3 * EPS


def arb_replace(q: Quiver, rep: Representation, tol: Optional[float] = None) -> ArbReplacement:
    if rep.quiver != q:
        raise ValueError("representation belongs to a different quiver")
    tol = resolve_tol(tol)
    aug = augment(q)
    order = top_sort(q)
    minimal = q.minimal_vertices()
    widths = [rep.dims[v] for v in minimal]
    n_root = int(sum(widths))

    # The root space is the product of the minimal vertex spaces.
    projections: dict[int, LinMap] = {}
    offset = 0
    for v, width in zip(minimal, widths):
        block = np.zeros((width, n_root))
        block[:, offset:offset + width] = np.eye(width)
        projections[v] = block
        offset += width
    root_basis = (
        scipy.linalg.block_diag(*[rep.space(v, tol).basis for v in minimal])
        if minimal
        else np.zeros((0, 0))
    )
    product = Subspace(n_root, root_basis, tol)

    flow_spaces: dict[int, Subspace] = {}
    flow_maps: dict[int, LinMap] = {}
    for v in order:
        incoming = q.in_edges(v)
        if not incoming:
            flow_spaces[v] = product
            flow_maps[v] = projections[v]
            continue
        sources = [flow_spaces[q.source(e)] for e in incoming]
        common = sources[0] if len(sources) == 1 else intersect(*sources, tol=tol)
        arriving = [rep.maps[e] @ flow_maps[q.source(e)] for e in incoming]
        space = equalise(common, arriving, tol)
        flow_maps[v] = arriving[0]
        constraint = rep.spaces[v] if rep.spaces else None
        if constraint is not None and not constraint.is_full() and not _carries(rep, incoming[0], tol):
            space = intersect(space, preimage(flow_maps[v], constraint, tol), tol=tol)
        flow_spaces[v] = space

    maximal = q.maximal_vertices()
    if not maximal:
        root_space = product
    elif len(maximal) == 1:
        root_space = flow_spaces[maximal[0]]
    else:
        root_space = intersect(*[flow_spaces[v] for v in maximal], tol=tol)

    tree = spanning_arborescence(aug.quiver, aug.root)
    maps = list(rep.maps) + [projections[v] for v in minimal]
    spaces = [rep.spaces[v] if rep.spaces else None for v in q.vertices] + [root_space]
    plus = Representation(aug.quiver, rep.dims + (n_root,), tuple(maps), tuple(spaces))
    replaced = plus.restrict(tree.tree())
    logger.debug(
        "Pipeline: arboreal replacement over {} minimal vertices, root space {} of {}",
        len(minimal),
        root_space.dim,
        n_root,
    )
    flow_spaces[aug.root] = product
    flow_maps[aug.root] = np.eye(n_root)
    return ArbReplacement(
        aug,
        tree,
        replaced,
        tuple(flow_spaces[v] for v in aug.quiver.vertices),
        tuple(flow_maps[v] for v in aug.quiver.vertices),
        root_space,
    )
