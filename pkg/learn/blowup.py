from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence, Union

import networkx as nx
from loguru import logger

from errors import DimensionMismatch, ShapeMismatch
from graph.quiver import Quiver
from sections.representation import Representation

Delta = Union[Sequence[int], Mapping[int, int]]


def node_name(v: int, i: int) -> str:
    return f"{v}_{i}"


@dataclass(frozen=True, eq=False)
class BlowupGraph:
    """Scalar graph with ``delta[v]`` nodes per vertex and a complete bipartite bundle per edge.

    Node ``"v_i"`` is coordinate ``i`` of vertex ``v``. Each scalar edge keeps
    the quiver edge it came from in its ``edge`` attribute and, for weighted
    blowups, the matrix entry in ``weight``.
    """

    quiver: Quiver
    delta: tuple[int, ...]
    graph: nx.MultiDiGraph
    weighted: bool

    @property
    def n_nodes(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def n_edges(self) -> int:
        return self.graph.number_of_edges()

    def nodes_of(self, v: int) -> list[str]:
        return [node_name(v, i) for i in range(self.delta[v])]

    def bundle(self, edge_id: int) -> list[tuple[str, str, float]]:
        return [
            (u, w, data["weight"])
            for u, w, data in self.graph.edges(data=True)
            if data["edge"] == edge_id
        ]

    def edgelist(self) -> Iterator[str]:
        """One ``src dst weight`` line per scalar edge."""
        return nx.generate_edgelist(self.graph, delimiter=" ", data=["weight"])

    def to_edgelist(self) -> str:
        return "\n".join(self.edgelist()) + ("\n" if self.n_edges else "")


def _delta_tuple(q: Quiver, delta: Delta) -> tuple[int, ...]:
    if isinstance(delta, Mapping):
        missing = [v for v in q.vertices if v not in delta]
        if missing:
            raise DimensionMismatch(f"no count given for vertices {missing}")
        values = tuple(int(delta[v]) for v in q.vertices)
    else:
        values = tuple(int(k) for k in delta)
    if len(values) != q.n_vertices:
        raise DimensionMismatch(f"{len(values)} counts for {q.n_vertices} vertices")
    if any(k < 0 for k in values):
        raise DimensionMismatch("blowup counts must be non-negative")
    return values


def delta_blowup(q: Quiver, delta: Delta, weights: Optional[Representation] = None) -> BlowupGraph:
    """Replace vertex ``v`` by ``delta[v]`` scalar nodes.

    The scalar edge ``s_i -> t_j`` of edge ``e`` carries ``A_e[j, i]`` when
    ``weights`` is given and ``1.0`` otherwise. Reading the result as a
    graphical model only makes sense when every vertex has at most one
    incoming edge; other quivers are blown up anyway, with a warning.
    """
    delta = _delta_tuple(q, delta)
    if weights is not None:
        if weights.quiver != q:
            raise ShapeMismatch("weights belong to a different quiver")
        if weights.dims != delta:
            raise ShapeMismatch(f"weight dimensions {weights.dims} do not match counts {delta}")

    crowded = [v for v in q.vertices if len(q.in_edges(v)) > 1]
    if crowded:
        logger.warning(
            "Blowup: vertices {} have several incoming edges; the graphical-model reading does not apply",
            crowded,
        )

    graph = nx.MultiDiGraph()
    for v in q.vertices:
        graph.add_nodes_from(node_name(v, i) for i in range(delta[v]))
    for edge in q.edges:
        matrix = weights.maps[edge.id] if weights is not None else None
        for i in range(delta[edge.source]):
            for j in range(delta[edge.target]):
                weight = float(matrix[j, i]) if matrix is not None else 1.0
                graph.add_edge(
                    node_name(edge.source, i), node_name(edge.target, j), edge=edge.id, weight=weight
                )
    logger.debug("Blowup: {} nodes, {} scalar edges", graph.number_of_nodes(), graph.number_of_edges())
    return BlowupGraph(q, delta, graph, weights is not None)
