PROGRAM_NAME = "qsec"

# Relative rank tolerance. The effective cutoff is never below max(rows, cols)·eps.
DEFAULT_RTOL = 1e-10
RESIDUAL_TOL = 1e-8
FEASIBILITY_TOL = 1e-8
TIE_TOL = 1e-9
CENTRED_TOL = 1e-12
SYMMETRY_TOL = 1e-12
MAX_CONDITION = 1e14
MAX_PATH_COUNT = 2**63 - 1

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_SHAPE = 3
EXIT_TRIVIAL = 4

ENV_TOL = "QSEC_TOL"
ENV_LOG_LEVEL = "QSEC_LOG_LEVEL"
ENV_LOG_FILE = "QSEC_LOG_FILE"
DEFAULT_LOG_LEVEL = "WARNING"

BENCH_SIZES: tuple[int, ...] = (10, 20, 40, 80)
BENCH_DIM = 4
BENCH_PLANTED = 2
BENCH_REPEATS = 3

TRIVIAL_SECTIONS_MESSAGE = (
    "space of sections is trivial (d = 0); "
    "restrict to a subquiver with --restrict V1,V2,... to extract features"
)
