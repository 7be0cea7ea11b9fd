from __future__ import annotations

from argparse import Namespace

from loguru import logger

from formats.problem import ProblemFile
from formats.report import ResultReport
from handlers.common import add_common, add_restrict, effective_tol, positive_int, section_report, workload
from sections.pipeline import sections

NAME = "sections"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="compute a basis of the space of sections")
    parser.add_argument("problem", help="problem file (JSON)")
    add_restrict(parser)
    parser.add_argument("--workers", type=positive_int, help="threads for independent cyclic components")
    add_common(parser)


def handle(args: Namespace) -> ResultReport:
    problem = ProblemFile.load(args.problem)
    tol = effective_tol(args, problem)
    work = workload(problem, args.restrict)
    space, trace = sections(work.quiver, work.representation, tol=tol, workers=args.workers)
    if space.d == 0:
        logger.info("Sections: only the zero section exists")
    return section_report(NAME, tol, work, space, trace)
