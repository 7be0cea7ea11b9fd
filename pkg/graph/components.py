from __future__ import annotations

from loguru import logger

from graph.quiver import Edge, Quiver, Subquiver


def _strong_components(q: Quiver) -> list[list[int]]:
    # Iterative Tarjan; recursion depth would otherwise follow the longest path.
    index: dict[int, int] = {}
    lowlink: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0

    for start in q.vertices:
        if start in index:
            continue
        work = [(start, 0)]
        while work:
            v, position = work.pop()
            if position == 0:
                index[v] = lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            out = q.out_edges(v)
            descended = False
            while position < len(out):
                w = q.target(out[position])
                position += 1
                if w not in index:
                    work.append((v, position))
                    work.append((w, 0))
                    descended = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if descended:
                continue
            if lowlink[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.append(w)
                    if w == v:
                        break
                components.append(sorted(component))
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
    return components


def induced_on(q: Quiver, vertices: list[int]) -> Subquiver:
    """Vertices (ascending) and every edge with both endpoints among them."""
    kept = sorted(vertices)
    local = {v: i for i, v in enumerate(kept)}
    edge_ids = tuple(e.id for e in q.edges if e.source in local and e.target in local)
    edges = tuple(
        Edge(i, local[q.source(e)], local[q.target(e)]) for i, e in enumerate(edge_ids)
    )
    return Subquiver(Quiver(len(kept), edges), tuple(kept), edge_ids)


def tarjan_msc(q: Quiver) -> list[Subquiver]:
    """Maximal strongly connected subquivers, ordered by their lowest vertex.

    A single vertex only counts when it carries a loop.
    """
    found = []
    for component in _strong_components(q):
        if len(component) == 1:
            v = component[0]
            if not any(q.target(e) == v for e in q.out_edges(v)):
                continue
        found.append(induced_on(q, component))
    found.sort(key=lambda sub: sub.vertex_ids[0])
    logger.debug("Graph: {} strongly connected components with cycles", len(found))
    return found
