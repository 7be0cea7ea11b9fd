from __future__ import annotations

from typing import Optional

import numpy as np

from graph.quiver import Quiver
from sections.representation import Representation
from subspace.ops import kernel
from subspace.space import Subspace


def compatibility_matrix(rep: Representation) -> np.ndarray:
    """Stacked edge constraints: each edge contributes ``-A_e`` on its source
    block and the identity on its target block. Constrained vertices add
    ``I - P`` rows."""
    layout = rep.layout
    rows = []
    for edge, a in zip(rep.quiver.edges, rep.maps):
        block = np.zeros((rep.dims[edge.target], rep.total_dim))
        block[:, layout.slice(edge.source)] -= a
        block[:, layout.slice(edge.target)] += np.eye(rep.dims[edge.target])
        rows.append(block)
    for v, space in enumerate(rep.spaces):
        if space is None or space.is_full():
            continue
        block = np.zeros((rep.dims[v], rep.total_dim))
        block[:, layout.slice(v)] = np.eye(rep.dims[v]) - space.projector()
        rows.append(block)
    if not rows:
        return np.zeros((0, rep.total_dim))
    return np.vstack(rows)


def naive_sections(q: Quiver, rep: Representation, tol: Optional[float] = None) -> Subspace:
    """Space of sections as the kernel of the full compatibility matrix."""
    if rep.quiver != q:
        raise ValueError("representation belongs to a different quiver")
    return kernel(compatibility_matrix(rep), tol)
