from __future__ import annotations

from argparse import Namespace

from loguru import logger

from formats.problem import ProblemFile
from formats.report import ResultReport, rows, values
from handlers.common import (
    add_common,
    add_restrict,
    effective_tol,
    load_samples,
    positive_int,
    section_report,
    workload,
)
from qpca.pca import ordinary_pca, quiver_pca
from sections.pipeline import sections

NAME = "pca"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="principal components inside the space of sections")
    parser.add_argument("problem", help="problem file (JSON)")
    parser.add_argument("data", help="samples as CSV, columns ordered by vertex then coordinate")
    parser.add_argument("--r", type=int, default=1, help="number of components (default 1)")
    parser.add_argument("--no-center", action="store_true", help="data is already mean-centred")
    parser.add_argument("--ordinary", action="store_true", help="ordinary PCA, ignoring the edge maps")
    parser.add_argument("--workers", type=positive_int, help="threads for independent cyclic components")
    add_restrict(parser)
    add_common(parser)


def handle(args: Namespace) -> ResultReport:
    problem = ProblemFile.load(args.problem)
    tol = effective_tol(args, problem)
    work = workload(problem, args.restrict)
    data = load_samples(args.data, work, center=not args.no_center)

    if args.ordinary:
        result = ordinary_pca(data, args.r)
        if result.ties.any():
            logger.warning("PCA: eigenvalue ties among the top {} components; directions are not unique", result.r)
        report = ResultReport(command=NAME, tol=tol, total_dim=data.n)
        report.details["mode"] = "ordinary"
        directions, eigenvalues, ties = result.directions, result.eigenvalues, result.ties
    else:
        space, trace = sections(work.quiver, work.representation, tol=tol, workers=args.workers)
        pcs = quiver_pca(data, space, args.r)
        report = section_report(NAME, tol, work, space, trace)
        report.details["mode"] = "quiver"
        report.details["objective"] = pcs.trace
        report.details["pencil_condition"] = pcs.pencil.condition
        directions, eigenvalues, ties = pcs.directions, pcs.eigenvalues, pcs.ties

    report.eigenvalues = values(eigenvalues)
    report.directions = rows(directions.T) if directions.size else []
    report.ties = [bool(t) for t in ties]
    report.details["centred"] = not args.no_center
    report.details["samples"] = data.m
    return report
