from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence


class Edge(NamedTuple):
    id: int
    source: int
    target: int

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class Quiver:
    """Finite directed multigraph on dense integer ids.

    Loops and parallel edges are allowed. Instances are immutable; adjacency
    is cached on first use.
    """

    n_vertices: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.n_vertices < 0:
            raise ValueError("vertex count must be non-negative")
        for index, edge in enumerate(self.edges):
            if edge.id != index:
                raise ValueError(f"edge ids must be dense, got {edge.id} at position {index}")
            for endpoint in (edge.source, edge.target):
                if not 0 <= endpoint < self.n_vertices:
                    raise ValueError(f"edge {edge.id} has invalid endpoint {endpoint}")

    @classmethod
    def from_pairs(cls, n_vertices: int, pairs: Iterable[tuple[int, int]]) -> "Quiver":
        edges = tuple(Edge(index, int(s), int(t)) for index, (s, t) in enumerate(pairs))
        return cls(n_vertices, edges)

    @property
    def vertices(self) -> range:
        return range(self.n_vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def source(self, edge_id: int) -> int:
        return self.edges[edge_id].source

    def target(self, edge_id: int) -> int:
        return self.edges[edge_id].target

    @cached_property
    def _out(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.vertices]
        for edge in self.edges:
            out[edge.source].append(edge.id)
        return tuple(tuple(ids) for ids in out)

    @cached_property
    def _in(self) -> tuple[tuple[int, ...], ...]:
        into: list[list[int]] = [[] for _ in self.vertices]
        for edge in self.edges:
            into[edge.target].append(edge.id)
        return tuple(tuple(ids) for ids in into)

    def out_edges(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_edges(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def has_loops(self) -> bool:
        return any(edge.is_loop for edge in self.edges)

    def minimal_vertices(self) -> list[int]:
        return [v for v in self.vertices if not self._in[v]]

    def maximal_vertices(self) -> list[int]:
        return [v for v in self.vertices if not self._out[v]]

    def reachable_from(self, v: int, *, reverse: bool = False) -> set[int]:
        adjacency = self._in if reverse else self._out
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for e in adjacency[u]:
                w = self.edges[e].source if reverse else self.edges[e].target
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def is_strongly_connected(self) -> bool:
        if self.n_vertices == 0:
            return False
        everything = set(self.vertices)
        return self.reachable_from(0) == everything and self.reachable_from(0, reverse=True) == everything

    def path(self, edge_ids: Sequence[int], start: Optional[int] = None) -> "QuiverPath":
        return QuiverPath.build(self, edge_ids, start)


@dataclass(frozen=True)
class QuiverPath:
    edges: tuple[int, ...]
    source: int
    target: int

    @classmethod
    def build(cls, q: Quiver, edge_ids: Sequence[int], start: Optional[int] = None) -> "QuiverPath":
        ids = tuple(int(e) for e in edge_ids)
        if not ids:
            if start is None:
                raise ValueError("an empty path needs its vertex")
            return cls((), start, start)
        if start is not None and q.source(ids[0]) != start:
            raise ValueError(f"path starts at {q.source(ids[0])}, expected {start}")
        for previous, current in zip(ids, ids[1:]):
            if q.target(previous) != q.source(current):
                raise ValueError(f"edges {previous} and {current} do not chain")
        if len(set(ids)) != len(ids):
            raise ValueError("path repeats an edge")
        if len({q.source(e) for e in ids}) != len(ids):
            raise ValueError("path revisits a source vertex")
        return cls(ids, q.source(ids[0]), q.target(ids[-1]))

    def __len__(self) -> int:
        return len(self.edges)

    def extend(self, q: Quiver, edge_id: int) -> "QuiverPath":
        return QuiverPath.build(q, self.edges + (edge_id,), self.source)


@dataclass(frozen=True)
class Subquiver:
    """A quiver together with the ids its vertices and edges had in a parent."""

    quiver: Quiver
    vertex_ids: tuple[int, ...]
    edge_ids: tuple[int, ...]

    @cached_property
    def local_vertex(self) -> Mapping[int, int]:
        return {parent: local for local, parent in enumerate(self.vertex_ids)}

    @cached_property
    def local_edge(self) -> Mapping[int, int]:
        return {parent: local for local, parent in enumerate(self.edge_ids)}


@dataclass(frozen=True)
class Arborescence:
    """Spanning out-tree of ``base`` rooted at ``root``.

    ``parent`` maps every non-root vertex to its unique incoming tree edge,
    using the edge ids of ``base``.
    """

    base: Quiver
    root: int
    parent: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.root in self.parent:
            raise ValueError("the root has an incoming tree edge")
        for v, e in self.parent.items():
            if self.base.target(e) != v:
                raise ValueError(f"tree edge {e} does not enter vertex {v}")
        missing = set(self.base.vertices) - set(self.parent) - {self.root}
        if missing:
            raise ValueError(f"vertices without a tree edge: {sorted(missing)}")
        # Walk every vertex to the root to rule out cycles.
        settled = {self.root}
        for v in self.base.vertices:
            trail: list[int] = []
            while v not in settled:
                trail.append(v)
                if len(trail) > self.base.n_vertices:
                    raise ValueError("tree edges contain a cycle")
                v = self.base.source(self.parent[v])
            settled.update(trail)

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(sorted(self.parent.values()))

    @cached_property
    def _paths(self) -> dict[int, QuiverPath]:
        paths: dict[int, QuiverPath] = {}
        for v in self.base.vertices:
            chain: list[int] = []
            u = v
            while u != self.root:
                e = self.parent[u]
                chain.append(e)
                u = self.base.source(e)
            paths[v] = QuiverPath.build(self.base, chain[::-1], self.root)
        return paths

    def path_to(self, v: int) -> QuiverPath:
        return self._paths[v]

    def tree(self) -> Subquiver:
        return spanning_subquiver(self.base, self.edges)


def spanning_subquiver(q: Quiver, edge_ids: Iterable[int]) -> Subquiver:
    """All vertices of ``q`` with a subset of its edges, renumbered densely."""
    kept = tuple(sorted(set(int(e) for e in edge_ids)))
    edges = tuple(Edge(local, q.source(e), q.target(e)) for local, e in enumerate(kept))
    return Subquiver(Quiver(q.n_vertices, edges), tuple(q.vertices), kept)
