from __future__ import annotations

from argparse import ArgumentParser, ArgumentTypeError, Namespace
from dataclasses import dataclass
from typing import Optional

import numpy as np

from config import Settings
from errors import WidthMismatch
from formats.dataset import read_samples
from formats.problem import ProblemFile
from formats.report import ResultReport, rows
from graph.quiver import Quiver
from graph.sorting import induced_subquiver
from qpca.dataset import Dataset
from sections.pipeline import PipelineTrace, SectionSpace
from sections.representation import Representation


def positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise ArgumentTypeError(f"must be positive: {text!r}")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise ArgumentTypeError(f"must be at least 1: {text!r}")
    return value


def label_list(text: str) -> list[str]:
    labels = [part.strip() for part in text.split(",") if part.strip()]
    if not labels:
        raise ArgumentTypeError("expected a comma-separated list of vertex labels")
    return labels


def add_common(parser: ArgumentParser) -> None:
    parser.add_argument("--tol", type=positive_float, help="relative rank tolerance")
    parser.add_argument("--json", action="store_true", help="print the report as JSON")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logs")


def add_restrict(parser: ArgumentParser) -> None:
    parser.add_argument(
        "--restrict",
        type=label_list,
        metavar="V1,V2,...",
        help="work on the subquiver spanned by these vertices",
    )


def effective_tol(args: Namespace, problem: Optional[ProblemFile] = None) -> float:
    """``--tol``, then the problem file, then ``QSEC_TOL``, then the default."""
    if getattr(args, "tol", None) is not None:
        return float(args.tol)
    if problem is not None and problem.tol is not None:
        return problem.tol
    return Settings.get().tol


@dataclass(frozen=True)
class Workload:
    """The quiver, representation and vertex labels a command works on."""

    quiver: Quiver
    representation: Representation
    labels: tuple[str, ...]
    full_width: int
    columns: Optional[np.ndarray] = None

    def take_columns(self, samples: np.ndarray) -> np.ndarray:
        return samples if self.columns is None else samples[:, self.columns]


def workload(problem: ProblemFile, restrict: Optional[list[str]] = None) -> Workload:
    rep = problem.representation()
    labels = tuple(problem.vertices)
    if not restrict:
        return Workload(rep.quiver, rep, labels, rep.total_dim)
    sub = induced_subquiver(rep.quiver, problem.vertex_ids(restrict))
    layout = rep.layout
    columns = np.concatenate(
        [np.arange(layout.total)[layout.slice(v)] for v in sub.vertex_ids] or [np.zeros(0, dtype=int)]
    )
    return Workload(
        sub.quiver, rep.restrict(sub), tuple(labels[v] for v in sub.vertex_ids), rep.total_dim, columns
    )


def section_report(
    command: str, tol: float, work: Workload, space: SectionSpace, trace: PipelineTrace
) -> ResultReport:
    acyclic = trace.acyclic
    stages = {
        "vertices": work.quiver.n_vertices,
        "edges": work.quiver.n_edges,
        "cyclic_components": len(acyclic.trace.components),
        "terminal_edges": len(acyclic.trace.terminal),
        "q_star_edges": trace.q_star.n_edges,
        "q_plus_vertices": trace.q_plus.n_vertices,
        "t_plus_edges": trace.t_plus.n_edges,
        "root_dim": trace.root_dim,
    }
    report = ResultReport(
        command=command,
        tol=tol,
        section_dim=space.d,
        total_dim=space.n,
        blocks={label: rows(space.block(v)) for v, label in enumerate(work.labels)},
        stages=stages,
        provenance=list(space.provenance),
    )
    if space.residual is not None:
        report.details["section_residual"] = space.residual
    return report


def load_samples(path: str, work: Workload, center: bool) -> Dataset:
    """Read a CSV dataset for the whole problem and keep the columns ``work`` uses.

    Without ``center`` the samples must already be mean-centred.
    """
    samples = read_samples(path)
    if samples.shape[1] != work.full_width:
        raise WidthMismatch(f"{path}: {samples.shape[1]} columns, total dimension is {work.full_width}")
    samples = work.take_columns(samples)
    layout = work.representation.layout
    if center:
        return Dataset.from_samples(samples, layout)
    return Dataset(samples, centred=True, layout=layout)
