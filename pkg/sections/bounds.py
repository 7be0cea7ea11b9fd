from __future__ import annotations

from typing import Iterable, NamedTuple, Optional, Sequence

from loguru import logger

from constants import MAX_PATH_COUNT
from errors import PathCountOverflow, ShapeMismatch
from graph.quiver import Quiver, Subquiver
from graph.sorting import augment, induced_subquiver, top_sort
from sections.pipeline import SectionSpace, sections
from sections.representation import Representation
from subspace.space import Subspace, as_linmap


def path_counts(q: Quiver) -> list[int]:
    """Number of paths from the augmented root to each vertex of an acyclic quiver."""
    counts = [0] * q.n_vertices
    for v in top_sort(q):
        incoming = q.in_edges(v)
        counts[v] = sum(counts[q.source(e)] for e in incoming) if incoming else 1
        if counts[v] > MAX_PATH_COUNT:
            raise PathCountOverflow(f"more than {MAX_PATH_COUNT} paths reach vertex {v}")
    return counts


def dimension_lower_bound(q: Quiver, rep: Representation) -> int:
    """Lower bound on the dimension of the space of sections of an acyclic quiver.

    Sums the minimal vertex dimensions and subtracts ``(n_v - 1) dim A_v`` per
    maximal vertex, where ``n_v`` counts the paths reaching it. Can be negative.
    """
    augment(q)
    counts = path_counts(q)
    dims = [rep.space(v).dim for v in q.vertices]
    bound = sum(dims[v] for v in q.minimal_vertices())
    bound -= sum((counts[v] - 1) * dims[v] for v in q.maximal_vertices())
    logger.debug("Bounds: lower bound {} from path counts {}", bound, counts)
    return bound


def merge_lower_bound(q: Quiver, rep: Representation) -> int:
    """Lower bound that charges every merge, wherever it happens.

    A section is fixed by its values at the minimal vertices; each incoming
    edge past the first at ``v`` adds ``dim A_v`` linear conditions. Unlike
    ``dimension_lower_bound`` this never exceeds the true dimension.
    """
    augment(q)
    dims = [rep.space(v).dim for v in q.vertices]
    bound = sum(dims[v] for v in q.minimal_vertices())
    bound -= sum((len(q.in_edges(v)) - 1) * dims[v] for v in q.vertices if q.in_edges(v))
    logger.debug("Bounds: merge bound {}", bound)
    return bound


def group_fixed_space(generators: Sequence, tol: Optional[float] = None) -> Subspace:
    """Common fixed space of square matrices, as sections of a one-vertex quiver with a loop per generator."""
    if not generators:
        raise ValueError("at least one generator is required")
    first = as_linmap(generators[0], name="generator 0")
    size = first.shape[0]
    if first.shape != (size, size):
        raise ShapeMismatch(f"generator 0 is not square: {first.shape}")
    mats = [first] + [as_linmap(g, size, size, name=f"generator {i}") for i, g in enumerate(generators[1:], 1)]
    q = Quiver.from_pairs(1, [(0, 0)] * len(mats))
    space, _ = sections(q, Representation.build(q, (size,), mats), tol=tol)
    return space.image()


class Stalk(NamedTuple):
    space: SectionSpace
    subquiver: Subquiver


def pushforward_stalk(
    q: Quiver, rep: Representation, keep: Iterable[int], tol: Optional[float] = None
) -> Stalk:
    """Sections over the subquiver spanned by ``keep``.

    For a monotone map of posets ``f`` and a point ``y``, passing
    ``keep = {x : f(x) >= y}`` gives the stalk of the pushforward at ``y``.
    """
    sub = induced_subquiver(q, keep)
    restricted = rep.restrict(sub)
    space, _ = sections(sub.quiver, restricted, tol=tol)
    return Stalk(space, sub)
