from __future__ import annotations

import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from loguru import logger

from constants import BENCH_DIM, BENCH_PLANTED, BENCH_REPEATS, BENCH_SIZES
from graph.quiver import Quiver
from sections.naive import naive_sections
from sections.pipeline import sections
from sections.representation import Representation
from subspace.ops import pinv, principal_angle_distance


def generate_family(
    n_vertices: int, dim: int = BENCH_DIM, seed: int = 0, planted: int = BENCH_PLANTED
) -> Representation:
    """Sparse benchmark quiver: a chain with skip edges and a few 2-cycles.

    Every third vertex gets a skip edge two steps ahead and every fifth vertex
    a back edge from its successor. Each vertex carries a Gaussian frame of
    ``planted`` vectors and every map sends the source frame to the target
    frame, and acts on the complement as half a random orthogonal matrix.
    Products along long paths stay bounded, and generic draws have exactly
    ``planted`` independent sections.
    """
    if not 0 <= planted <= dim:
        raise ValueError(f"cannot plant {planted} sections in dimension {dim}")
    pairs = [(v, v + 1) for v in range(n_vertices - 1)]
    pairs += [(v, v + 2) for v in range(0, n_vertices - 2, 3)]
    pairs += [(v + 1, v) for v in range(0, n_vertices - 1, 5)]
    q = Quiver.from_pairs(n_vertices, pairs)
    rng = np.random.default_rng(seed)
    frames = [rng.standard_normal((dim, planted)) for _ in range(n_vertices)]
    inverses = [pinv(f) for f in frames]
    maps = []
    for s, t in pairs:
        rotation, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
        complement = np.eye(dim) - frames[s] @ inverses[s]
        maps.append(frames[t] @ inverses[s] + 0.5 * rotation @ complement)
    return Representation.build(q, [dim] * n_vertices, maps)


def _median_time(fn, repeats: int) -> tuple[float, object]:
    timings, result = [], None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        timings.append(time.perf_counter() - start)
    return statistics.median(timings), result


@dataclass(frozen=True)
class BenchRow:
    n_vertices: int
    n_edges: int
    pipeline: float
    naive: float
    section_dim: int
    naive_dim: int
    distance: float

    @property
    def speedup(self) -> float:
        return self.naive / self.pipeline if self.pipeline > 0 else float("inf")

    def as_row(self) -> list:
        return [self.n_vertices, self.n_edges, self.pipeline, self.naive, self.speedup, self.section_dim]


BENCH_HEADER = ("vertices", "edges", "pipeline s", "naive s", "speedup", "d")


def run_instance(n_vertices: int, dim: int, seed: int, repeats: int, tol: Optional[float]) -> BenchRow:
    rep = generate_family(n_vertices, dim, seed)
    q = rep.quiver
    pipeline_time, (space, _) = _median_time(lambda: sections(q, rep, tol=tol, verify=False), repeats)
    naive_time, oracle = _median_time(lambda: naive_sections(q, rep, tol=tol), repeats)
    return BenchRow(
        n_vertices,
        q.n_edges,
        pipeline_time,
        naive_time,
        space.d,
        oracle.dim,
        principal_angle_distance(space.image(), oracle),
    )


class BenchService:
    """Times the pipeline against the naive kernel over the benchmark family."""

    def __init__(
        self,
        sizes: Sequence[int] = BENCH_SIZES,
        dim: int = BENCH_DIM,
        repeats: int = BENCH_REPEATS,
        seed: int = 0,
        tol: Optional[float] = None,
    ):
        self.sizes = tuple(sizes)
        self.dim = dim
        self.repeats = repeats
        self.seed = seed
        self.tol = tol

    def run(self, workers: Optional[int] = None) -> list[BenchRow]:
        jobs = [(n, self.dim, self.seed + n, self.repeats, self.tol) for n in self.sizes]
        if workers and workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                rows = list(pool.map(run_instance, *zip(*jobs)))
        else:
            rows = [run_instance(*job) for job in jobs]
        for row in rows:
            logger.info(
                "Bench: n={} pipeline {:.4f} s, naive {:.4f} s, speedup {:.2f}",
                row.n_vertices,
                row.pipeline,
                row.naive,
                row.speedup,
            )
        return sorted(rows, key=lambda r: r.n_vertices)
