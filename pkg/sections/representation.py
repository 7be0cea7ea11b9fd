from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import accumulate
from typing import Optional, Sequence

import numpy as np

from errors import DimensionMismatch, ShapeMismatch
from graph.quiver import Quiver, Subquiver
from subspace.space import LinMap, Subspace, as_linmap


@dataclass(frozen=True)
class BlockLayout:
    """Per-vertex coordinate blocks of the total space, in vertex order."""

    dims: tuple[int, ...]

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        return tuple(accumulate(self.dims[:-1], initial=0))

    @property
    def total(self) -> int:
        return int(sum(self.dims))

    def slice(self, v: int) -> slice:
        start = self.offsets[v]
        return slice(start, start + self.dims[v])


@dataclass(frozen=True, eq=False)
class Representation:
    """Vector spaces on vertices and matrices on edges.

    ``maps[e]`` has shape ``dims[t(e)] x dims[s(e)]``. ``spaces[v]``, when set,
    is a subspace of ``R^dims[v]`` the section must stay inside; the pipeline
    uses it for the shrunken spaces of intermediate stages.
    """

    quiver: Quiver
    dims: tuple[int, ...]
    maps: tuple[LinMap, ...]
    spaces: tuple[Optional[Subspace], ...] = ()

    def __post_init__(self) -> None:
        q = self.quiver
        if len(self.dims) != q.n_vertices:
            raise DimensionMismatch(f"{len(self.dims)} dimensions for {q.n_vertices} vertices")
        if any(d < 0 for d in self.dims):
            raise DimensionMismatch("vertex dimensions must be non-negative")
        if len(self.maps) != q.n_edges:
            raise ShapeMismatch(f"{len(self.maps)} matrices for {q.n_edges} edges")
        for edge, m in zip(q.edges, self.maps):
            expected = (self.dims[edge.target], self.dims[edge.source])
            if m.shape != expected:
                raise ShapeMismatch(f"edge {edge.id} has matrix shape {m.shape}, expected {expected}")
        if self.spaces:
            if len(self.spaces) != q.n_vertices:
                raise DimensionMismatch("one constraint space per vertex is required")
            for v, space in enumerate(self.spaces):
                if space is not None and space.ambient_dim != self.dims[v]:
                    raise DimensionMismatch(f"constraint space at vertex {v} lives in the wrong dimension")

    @classmethod
    def build(
        cls,
        q: Quiver,
        dims: Sequence[int],
        maps: Sequence,
        spaces: Optional[Sequence[Optional[Subspace]]] = None,
    ) -> "Representation":
        dims = tuple(int(d) for d in dims)
        if len(dims) != q.n_vertices:
            raise DimensionMismatch(f"{len(dims)} dimensions for {q.n_vertices} vertices")
        if len(maps) != q.n_edges:
            raise ShapeMismatch(f"{len(maps)} matrices for {q.n_edges} edges")
        arrays = tuple(
            as_linmap(m, dims[e.target], dims[e.source], name=f"edge {e.id}")
            for e, m in zip(q.edges, maps)
        )
        return cls(q, dims, arrays, tuple(spaces) if spaces else ())

    @cached_property
    def layout(self) -> BlockLayout:
        return BlockLayout(self.dims)

    @property
    def total_dim(self) -> int:
        return self.layout.total

    @property
    def is_constrained(self) -> bool:
        return any(s is not None and not s.is_full() for s in self.spaces)

    def space(self, v: int, tol: Optional[float] = None) -> Subspace:
        if self.spaces and self.spaces[v] is not None:
            return self.spaces[v]
        return Subspace.full(self.dims[v], tol)

    def with_spaces(self, spaces: Sequence[Optional[Subspace]]) -> "Representation":
        return Representation(self.quiver, self.dims, self.maps, tuple(spaces))

    def restrict(self, sub: Subquiver) -> "Representation":
        """The representation seen by a subquiver of ``self.quiver``."""
        spaces = tuple(self.spaces[v] for v in sub.vertex_ids) if self.spaces else ()
        return Representation(
            sub.quiver,
            tuple(self.dims[v] for v in sub.vertex_ids),
            tuple(self.maps[e] for e in sub.edge_ids),
            spaces,
        )

    def act(self, g: Sequence) -> "Representation":
        """Change of basis: ``(gA)_e = g_t A_e g_s^-1`` for invertible ``g_v``."""
        if len(g) != self.quiver.n_vertices:
            raise DimensionMismatch("one basis change per vertex is required")
        mats = [as_linmap(gv, d, d, name=f"basis change at {v}") for v, (gv, d) in enumerate(zip(g, self.dims))]
        inverses = [np.linalg.inv(m) if m.size else m for m in mats]
        maps = tuple(mats[e.target] @ a @ inverses[e.source] for e, a in zip(self.quiver.edges, self.maps))
        spaces = ()
        if self.spaces:
            spaces = tuple(
                None if s is None else Subspace.from_span(mats[v] @ s.basis, s.tol)
                for v, s in enumerate(self.spaces)
            )
        return Representation(self.quiver, self.dims, maps, spaces)


def check_section(rep: Representation, gamma) -> float:
    """Largest violation of ``gamma_t = A_e gamma_s`` (or of a vertex constraint)."""
    x = np.asarray(gamma, dtype=np.float64).reshape(-1)
    if x.shape[0] != rep.total_dim:
        raise DimensionMismatch(f"vector has length {x.shape[0]}, total dimension is {rep.total_dim}")
    layout = rep.layout
    worst = 0.0
    for edge, a in zip(rep.quiver.edges, rep.maps):
        gap = x[layout.slice(edge.target)] - a @ x[layout.slice(edge.source)]
        worst = max(worst, float(np.linalg.norm(gap)))
    for v, space in enumerate(rep.spaces):
        if space is not None:
            worst = max(worst, space.residual(x[layout.slice(v)]))
    return worst
