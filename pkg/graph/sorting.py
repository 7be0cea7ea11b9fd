from __future__ import annotations

import heapq
from collections import deque
from typing import Callable, Iterable, NamedTuple, Union

from loguru import logger

from errors import CyclicInput, Unreachable
from graph.components import induced_on
from graph.quiver import Arborescence, Edge, Quiver, Subquiver


def _witness_cycle(q: Quiver, remaining: set[int]) -> list[int]:
    # Every remaining vertex has an in-edge from a remaining vertex; walk backwards until a repeat.
    v = min(remaining)
    seen: dict[int, int] = {}
    backwards: list[int] = []
    while v not in seen:
        seen[v] = len(backwards)
        e = min(x for x in q.in_edges(v) if q.source(x) in remaining)
        backwards.append(e)
        v = q.source(e)
    cycle = backwards[seen[v]:]
    return cycle[::-1]


def top_sort(q: Quiver) -> list[int]:
    """Vertices in an order respecting every edge; ties go to the lowest id.

    Raises:
        CyclicInput: carrying the edge ids of one directed cycle.
    """
    indegree = [len(q.in_edges(v)) for v in q.vertices]
    ready = [v for v in q.vertices if indegree[v] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for e in q.out_edges(v):
            w = q.target(e)
            indegree[w] -= 1
            if indegree[w] == 0:
                heapq.heappush(ready, w)
    if len(order) < q.n_vertices:
        witness = _witness_cycle(q, set(q.vertices) - set(order))
        raise CyclicInput(f"quiver has a directed cycle through edges {witness}", witness)
    return order


class Augmentation(NamedTuple):
    quiver: Quiver
    root: int
    new_edges: tuple[int, ...]


def augment(q: Quiver) -> Augmentation:
    """Add a root with one edge onto every vertex that has no incoming edge."""
    top_sort(q)
    root = q.n_vertices
    minimal = q.minimal_vertices()
    new_edges = tuple(range(q.n_edges, q.n_edges + len(minimal)))
    edges = q.edges + tuple(Edge(e, root, v) for e, v in zip(new_edges, minimal))
    logger.debug("Graph: augmented with root {} over minimal vertices {}", root, minimal)
    return Augmentation(Quiver(q.n_vertices + 1, edges), root, new_edges)


def spanning_arborescence(q: Quiver, root: int) -> Arborescence:
    parent: dict[int, int] = {}
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for e in q.out_edges(u):
            w = q.target(e)
            if w not in seen:
                seen.add(w)
                parent[w] = e
                queue.append(w)
    if len(seen) < q.n_vertices:
        missing = set(q.vertices) - seen
        raise Unreachable(f"vertices {sorted(missing)} are not reachable from {root}", missing)
    return Arborescence(q, root, parent)


def induced_subquiver(
    q: Quiver, keep: Union[Callable[[int], bool], Iterable[int]]
) -> Subquiver:
    """Keep the chosen vertices and every edge among them, with id remapping."""
    if callable(keep):
        chosen = [v for v in q.vertices if keep(v)]
    else:
        chosen = sorted({int(v) for v in keep})
        for v in chosen:
            if not 0 <= v < q.n_vertices:
                raise ValueError(f"vertex {v} is not in the quiver")
    return induced_on(q, chosen)
