from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from loguru import logger

from config import resolve_tol
from errors import NotStronglyConnected
from graph.components import tarjan_msc
from graph.ears import EarDecomposition, ear_decompose, induced_arborescence
from graph.quiver import Arborescence, Quiver, Subquiver, spanning_subquiver
from graph.sorting import top_sort
from sections.representation import Representation
from subspace.ops import compose_path, intersect, kernel, map_norm, preimage, restrict
from subspace.space import Subspace


@dataclass(frozen=True, eq=False)
class SCReduction:
    """A strongly connected representation collapsed onto its induced arborescence.

    ``representation`` lives on ``arborescence.tree()`` and carries the root
    space ``kernel``; every section of the input starts there.
    """

    decomposition: EarDecomposition
    arborescence: Arborescence
    representation: Representation
    kernel: Subspace

    @property
    def root(self) -> int:
        return self.arborescence.root


def sc_reduce(
    r: Quiver, rep: Representation, root_hint: Optional[int] = None, tol: Optional[float] = None
) -> SCReduction:
    if rep.quiver != r:
        raise ValueError("representation belongs to a different quiver")
    if not r.is_strongly_connected():
        raise NotStronglyConnected("sc_reduce needs a strongly connected quiver")
    tol = resolve_tol(tol)
    decomposition = ear_decompose(r, root_hint)
    tree = induced_arborescence(decomposition)
    root = tree.root
    n_root = rep.dims[root]
    paths = {v: compose_path(rep.maps, tree.path_to(v), n_root) for v in r.vertices}

    constraints = [rep.space(root, tol)]
    for eps in sorted(decomposition.terminal):
        s, t = r.source(eps), r.target(eps)
        around = rep.maps[eps] @ paths[s]
        delta = paths[t] - around
        constraints.append(kernel(delta, tol, scale=max(map_norm(paths[t]), map_norm(around))))
    if rep.is_constrained:
        for v in r.vertices:
            if v != root:
                constraints.append(preimage(paths[v], rep.space(v, tol), tol))
    k = constraints[0] if len(constraints) == 1 else intersect(*constraints, tol=tol)
    logger.debug(
        "Pipeline: component root {} keeps {} of {} dimensions after {} terminal edges",
        root,
        k.dim,
        n_root,
        len(decomposition.terminal),
    )

    spaces = [rep.spaces[v] if rep.spaces else None for v in r.vertices]
    spaces[root] = k
    reduced = rep.restrict(tree.tree()).with_spaces(spaces)
    return SCReduction(decomposition, tree, reduced, k)


@dataclass(frozen=True, eq=False)
class AcycTrace:
    components: tuple[Subquiver, ...]
    reductions: tuple[SCReduction, ...]
    # Component roots and terminal edges, in the ids of the input quiver.
    roots: tuple[int, ...]
    terminal: frozenset[int]


@dataclass(frozen=True, eq=False)
class AcycReduction:
    quiver: Subquiver
    representation: Representation
    trace: AcycTrace


def acyc_reduce(
    q: Quiver,
    rep: Representation,
    tol: Optional[float] = None,
    workers: Optional[int] = None,
    verify: bool = True,
) -> AcycReduction:
    """Drop every terminal edge and shrink vertex spaces so sections survive.

    Each vertex space becomes its intersection with the preimages, along all
    paths of the reduced quiver, of the component root spaces. The reduced
    quiver is acyclic, so one pass in reverse topological order visits each
    vertex after all of its successors.
    """
    if rep.quiver != q:
        raise ValueError("representation belongs to a different quiver")
    tol = resolve_tol(tol)
    components = tarjan_msc(q)

    def reduce_one(component: Subquiver) -> SCReduction:
        return sc_reduce(component.quiver, rep.restrict(component), tol=tol)

    if workers and workers > 1 and len(components) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reductions = list(pool.map(reduce_one, components))
    else:
        reductions = [reduce_one(c) for c in components]

    roots = tuple(c.vertex_ids[red.root] for c, red in zip(components, reductions))
    terminal = frozenset(
        c.edge_ids[e] for c, red in zip(components, reductions) for e in red.decomposition.terminal
    )
    reduced = spanning_subquiver(q, (e for e in range(q.n_edges) if e not in terminal))
    q_star = reduced.quiver
    order = top_sort(q_star)

    lambdas = [rep.space(v, tol) for v in q.vertices]
    for root, red in zip(roots, reductions):
        lambdas[root] = red.kernel
    # Preimage distributes over intersection, so meeting the pulled-back spaces
    # of the successors covers every path to every component root.
    for v in reversed(order):
        pulled = [
            preimage(rep.maps[reduced.edge_ids[e]], lambdas[q_star.target(e)], tol)
            for e in q_star.out_edges(v)
        ]
        if pulled:
            lambdas[v] = intersect(lambdas[v], *pulled, tol=tol)

    acyclic = Representation(
        q_star, rep.dims, tuple(rep.maps[e] for e in reduced.edge_ids), tuple(lambdas)
    )
    if verify:
        for e in range(q_star.n_edges):
            restrict(acyclic.maps[e], lambdas[q_star.source(e)], lambdas[q_star.target(e)])
    logger.debug(
        "Pipeline: acyclic reduction removed {} terminal edges across {} components",
        len(terminal),
        len(components),
    )
    trace = AcycTrace(tuple(components), tuple(reductions), roots, terminal)
    return AcycReduction(reduced, acyclic, trace)
