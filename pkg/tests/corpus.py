"""Seeded random instances shared by the test modules."""

from __future__ import annotations

from typing import Optional

import numpy as np

from graph.quiver import Quiver
from sections.pipeline import sections
from sections.representation import Representation


def random_quiver(
    rng: np.random.Generator, max_vertices: int = 8, max_edges: int = 12, loops: bool = True
) -> Quiver:
    n = int(rng.integers(1, max_vertices + 1))
    m = int(rng.integers(0, max_edges + 1))
    pairs = []
    for _ in range(m):
        s, t = (int(x) for x in rng.integers(0, n, size=2))
        if s == t and not loops:
            continue
        pairs.append((s, t))
    return Quiver.from_pairs(n, pairs)


def random_acyclic_quiver(rng: np.random.Generator, max_vertices: int = 8, max_edges: int = 12) -> Quiver:
    n = int(rng.integers(1, max_vertices + 1))
    m = int(rng.integers(0, max_edges + 1)) if n > 1 else 0
    pairs = []
    for _ in range(m):
        s, t = sorted(int(x) for x in rng.choice(n, size=2, replace=False))
        pairs.append((s, t))
    return Quiver.from_pairs(n, pairs)


def random_strongly_connected(rng: np.random.Generator, n: int, extra: int) -> Quiver:
    order = [int(v) for v in rng.permutation(n)]
    pairs = [(order[i], order[(i + 1) % n]) for i in range(n)]
    for _ in range(extra):
        s, t = (int(x) for x in rng.integers(0, n, size=2))
        pairs.append((s, t))
    return Quiver.from_pairs(n, pairs)


def integer_representation(
    rng: np.random.Generator, q: Quiver, max_dim: int = 5, low: int = -3, high: int = 3, dims=None
) -> Representation:
    if dims is None:
        dims = [int(d) for d in rng.integers(1, max_dim + 1, size=q.n_vertices)]
    maps = [
        rng.integers(low, high + 1, size=(dims[e.target], dims[e.source])).astype(float) for e in q.edges
    ]
    return Representation.build(q, dims, maps)


def gaussian_representation(rng: np.random.Generator, q: Quiver, dims) -> Representation:
    maps = [rng.standard_normal((dims[e.target], dims[e.source])) for e in q.edges]
    return Representation.build(q, dims, maps)


def corpus(seed: int = 0, size: int = 200, acyclic: bool = False) -> list[Representation]:
    rng = np.random.default_rng(seed)
    make = random_acyclic_quiver if acyclic else random_quiver
    return [integer_representation(rng, make(rng)) for _ in range(size)]


def planted_dataset(
    rng: np.random.Generator, rep: Representation, m: int, noise: float = 0.0, basis: Optional[np.ndarray] = None
) -> np.ndarray:
    """Samples ``F c`` for random coefficients ``c``, mean-centred."""
    if basis is None:
        space, _ = sections(rep.quiver, rep)
        basis = space.embedding
    x = rng.standard_normal((m, basis.shape[1])) @ basis.T
    if noise:
        x = x + noise * rng.standard_normal(x.shape)
    return x - x.mean(axis=0)
