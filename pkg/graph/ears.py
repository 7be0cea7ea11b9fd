from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Optional

from loguru import logger

from errors import NotStronglyConnected
from graph.quiver import Arborescence, Quiver, QuiverPath


@dataclass(frozen=True)
class Ear:
    edges: tuple[int, ...]
    source: int
    target: int

    @property
    def terminal(self) -> Optional[int]:
        return self.edges[-1] if self.edges else None


@dataclass(frozen=True)
class EarDecomposition:
    """Ordered ears of a strongly connected quiver.

    ``depth`` maps an edge to the 1-based index of its ear and ``level`` maps
    a vertex to the first ear that contains it.
    """

    quiver: Quiver
    ears: tuple[Ear, ...]
    depth: Mapping[int, int]
    level: Mapping[int, int]
    terminal: frozenset[int]
    root: int

    def vertices_of(self, index: int) -> list[int]:
        ear = self.ears[index]
        if not ear.edges:
            return [ear.source]
        return [self.quiver.source(e) for e in ear.edges] + [ear.target]


def _shortest_path(
    q: Quiver, start: int, stop: set[int], allowed: Optional[set[int]] = None
) -> list[int]:
    # BFS by ascending edge id; returns edge ids from start to the first vertex in stop.
    if start in stop:
        return []
    came_by: dict[int, int] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for e in q.out_edges(u):
            w = q.target(e)
            if w in seen:
                continue
            if w in stop:
                chain = [e]
                while u != start:
                    back = came_by[u]
                    chain.append(back)
                    u = q.source(back)
                return chain[::-1]
            if allowed is not None and w not in allowed:
                continue
            seen.add(w)
            came_by[w] = e
            queue.append(w)
    raise NotStronglyConnected(f"no path from vertex {start} back to the covered part")


def ear_decompose(r: Quiver, root_hint: Optional[int] = None) -> EarDecomposition:
    if not r.is_strongly_connected():
        raise NotStronglyConnected("quiver is not strongly connected")
    if root_hint is not None and not 0 <= root_hint < r.n_vertices:
        raise ValueError(f"root hint {root_hint} is not a vertex")

    if r.n_edges == 0:
        v = root_hint if root_hint is not None else 0
        return EarDecomposition(r, (Ear((), v, v),), {}, {v: 1}, frozenset(), v)

    first = min(r.out_edges(root_hint)) if root_hint is not None else 0
    root = r.source(first)
    closing = _shortest_path(r, r.target(first), {root}) if r.target(first) != root else []
    ears = [Ear((first, *closing), root, root)]
    used = set(ears[0].edges)
    covered = {r.source(e) for e in ears[0].edges}
    depth = {e: 1 for e in ears[0].edges}
    level = {v: 1 for v in covered}

    while len(used) < r.n_edges:
        e = next(x for x in range(r.n_edges) if x not in used and r.source(x) in covered)
        y = r.target(e)
        uncovered = set(r.vertices) - covered
        chain = [e] + _shortest_path(r, y, covered, allowed=uncovered)
        ear = Ear(tuple(chain), r.source(e), r.target(chain[-1]))
        ears.append(ear)
        for x in chain:
            used.add(x)
            depth[x] = len(ears)
            w = r.target(x)
            if w not in covered:
                covered.add(w)
                level[w] = len(ears)

    terminal = frozenset(ear.terminal for ear in ears)
    logger.debug(
        "Graph: {} ears rooted at {}, terminal edges {}", len(ears), root, sorted(terminal)
    )
    return EarDecomposition(r, tuple(ears), depth, level, terminal, root)


def induced_arborescence(d: EarDecomposition) -> Arborescence:
    parent = {}
    for e in range(d.quiver.n_edges):
        if e not in d.terminal:
            parent[d.quiver.target(e)] = e
    return Arborescence(d.quiver, d.root, parent)


def decreasing_path(d: EarDecomposition, v: int) -> QuiverPath:
    """Path from ``v`` back to the root whose ear indices never increase."""
    q = d.quiver
    chain: list[int] = []
    u = v
    while u != d.root:
        ear = d.ears[d.level[u] - 1]
        position = d.vertices_of(d.level[u] - 1).index(u)
        chain.extend(ear.edges[position:])
        u = ear.target
    return QuiverPath.build(q, chain, v)
