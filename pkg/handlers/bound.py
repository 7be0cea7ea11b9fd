from __future__ import annotations

from argparse import Namespace

import numpy as np

from formats.problem import ProblemFile
from formats.report import ResultReport
from handlers.common import add_common, effective_tol
from sections.bounds import dimension_lower_bound, merge_lower_bound, path_counts
from sections.pipeline import sections
from sections.representation import Representation

NAME = "bound"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="path-count lower bound on the number of sections")
    parser.add_argument("problem", help="problem file (JSON) describing an acyclic quiver")
    parser.add_argument("--verify", action="store_true", help="also compute the true dimension")
    add_common(parser)


def handle(args: Namespace) -> ResultReport:
    problem = ProblemFile.load(args.problem)
    tol = effective_tol(args, problem)
    if problem.has_matrices or args.verify:
        rep = problem.representation()
    else:
        # Only the dimensions matter for the bound itself.
        q = problem.quiver()
        dims = problem.dim_tuple
        rep = Representation.build(q, dims, [np.zeros((dims[e.target], dims[e.source])) for e in q.edges])
    q = rep.quiver
    bound = dimension_lower_bound(q, rep)
    counts = path_counts(q)
    report = ResultReport(
        command=NAME,
        tol=tol,
        total_dim=rep.total_dim,
        details={
            "bound": bound,
            "merge_bound": merge_lower_bound(q, rep),
            "path_counts": {label: counts[v] for v, label in enumerate(problem.vertices)},
        },
    )
    if args.verify:
        space, _ = sections(q, rep, tol=tol)
        report.section_dim = space.d
        report.details["tight"] = space.d == bound
    return report
