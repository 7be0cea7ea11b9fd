from __future__ import annotations

from argparse import Namespace

from loguru import logger

from formats.dataset import load_dataset
from formats.problem import ProblemFile
from formats.report import ResultReport, rows, values
from handlers.common import add_common, effective_tol, positive_int, section_report, workload
from learn.fit import VertexData, fit_edge_maps
from learn.pipeline import learn_then_pca
from sections.pipeline import sections
from sections.representation import BlockLayout

NAME = "learn"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="estimate edge maps from data by least squares")
    parser.add_argument("problem", help="problem file (JSON); edge matrices are ignored")
    parser.add_argument("data", help="samples as CSV, columns ordered by vertex then coordinate")
    parser.add_argument("--out", help="write the problem with learned matrices here")
    parser.add_argument("--r", type=int, help="also take this many quiver principal components")
    parser.add_argument("--no-center", action="store_true", help="data is already mean-centred")
    parser.add_argument("--workers", type=positive_int, help="threads for the per-edge fits")
    add_common(parser)


def handle(args: Namespace) -> ResultReport:
    problem = ProblemFile.load(args.problem)
    tol = effective_tol(args, problem)
    dims = problem.dim_tuple
    q = problem.quiver()
    data = load_dataset(args.data, BlockLayout(dims), center=not args.no_center)

    pcs = None
    if args.r is not None:
        result = learn_then_pca(q, data, dims, args.r, tol=tol, workers=args.workers)
        fitted, pcs, trace = result.fitted, result.pcs, result.trace
        space = pcs.sections
    else:
        fitted = fit_edge_maps(q, VertexData.from_dataset(data, dims), workers=args.workers, tol=tol)
        space, trace = sections(q, fitted.representation, tol=tol, workers=args.workers)

    learned = problem.with_matrices(fitted.representation.maps)
    if args.out:
        learned.dump(args.out)
        logger.info("Learn: wrote learned problem to {}", args.out)

    report = section_report(NAME, tol, workload(learned), space, trace)
    report.residuals = {edge.name: r for edge, r in zip(learned.edges, fitted.residuals)}
    report.details["problem"] = learned.to_dict()
    report.details["centred"] = not args.no_center
    report.details["samples"] = data.m
    if pcs is not None:
        report.eigenvalues = values(pcs.eigenvalues)
        report.directions = rows(pcs.directions.T) if pcs.directions.size else []
        report.ties = [bool(t) for t in pcs.ties]
        report.details["objective"] = pcs.trace
    return report
