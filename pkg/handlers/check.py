from __future__ import annotations

import time
from argparse import ArgumentTypeError, Namespace

from loguru import logger

from constants import BENCH_REPEATS, BENCH_SIZES, EXIT_MISMATCH, RESIDUAL_TOL
from errors import ParseError
from formats.problem import ProblemFile
from formats.report import ResultReport
from handlers.common import add_common, effective_tol, positive_int, section_report, workload
from sections.naive import naive_sections
from sections.pipeline import sections
from services.bench import BENCH_HEADER, BenchService
from subspace.ops import principal_angle_distance

NAME = "check"


def size_list(text: str) -> list[int]:
    try:
        sizes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not sizes or any(n < 2 for n in sizes):
        raise ArgumentTypeError("sizes must be integers of at least 2")
    return sizes


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="compare the pipeline against the naive kernel")
    parser.add_argument("problem", nargs="?", help="problem file (JSON); optional with --bench")
    parser.add_argument("--bench", action="store_true", help="time both methods on the benchmark family")
    parser.add_argument("--sizes", type=size_list, default=list(BENCH_SIZES), help="vertex counts for --bench")
    parser.add_argument("--repeats", type=positive_int, default=BENCH_REPEATS, help="timings per size")
    parser.add_argument("--workers", type=positive_int, help="processes for --bench")
    add_common(parser)


def _bench(args: Namespace) -> ResultReport:
    tol = effective_tol(args)
    rows = BenchService(args.sizes, repeats=args.repeats, tol=tol).run(workers=args.workers)
    report = ResultReport(command=NAME, tol=tol)
    report.details["table"] = {"header": list(BENCH_HEADER), "rows": [row.as_row() for row in rows]}
    report.details["speedup"] = rows[-1].speedup
    report.details["status"] = "PASS" if all(r.section_dim == r.naive_dim for r in rows) else "FAIL"
    if report.details["status"] == "FAIL":
        report.exit_code = EXIT_MISMATCH
    return report


def handle(args: Namespace) -> ResultReport:
    if args.bench and args.problem is None:
        return _bench(args)
    if args.problem is None:
        raise ParseError("a problem file is required unless --bench is given", "problem")

    problem = ProblemFile.load(args.problem)
    tol = effective_tol(args, problem)
    work = workload(problem)
    q, rep = work.quiver, work.representation

    start = time.perf_counter()
    space, trace = sections(q, rep, tol=tol)
    pipeline_time = time.perf_counter() - start
    start = time.perf_counter()
    oracle = naive_sections(q, rep, tol=tol)
    naive_time = time.perf_counter() - start

    distance = principal_angle_distance(space.image(), oracle)
    passed = space.d == oracle.dim and distance <= RESIDUAL_TOL
    report = section_report(NAME, tol, work, space, trace)
    report.timing.update({"pipeline": pipeline_time, "naive": naive_time})
    report.details.update(
        {
            "status": "PASS" if passed else "FAIL",
            "pipeline_dim": space.d,
            "naive_dim": oracle.dim,
            "distance": distance,
            "speedup": naive_time / pipeline_time if pipeline_time > 0 else float("inf"),
        }
    )
    if not passed:
        logger.error("Check: pipeline gives d = {}, naive kernel d = {}, distance {:.3e}", space.d, oracle.dim, distance)
        report.exit_code = EXIT_MISMATCH
    if args.bench:
        report.details["bench"] = _bench(args).details["table"]
    return report
