from qpca.dataset import Covariance, Dataset, covariance
from qpca.objectives import (
    feasible_frame,
    objective_implicit,
    objective_param,
    objective_projected,
    one_arrow_pencil,
    rayleigh,
    split_blocks,
)
from qpca.pca import PCAResult, QuiverPCs, constrained_pca, ordinary_pca, projection_matrix, quiver_pca
from qpca.pencil import PencilResult, solve_pencil, tie_flags

__all__ = [
    "Covariance",
    "Dataset",
    "PCAResult",
    "PencilResult",
    "QuiverPCs",
    "constrained_pca",
    "covariance",
    "feasible_frame",
    "objective_implicit",
    "objective_param",
    "objective_projected",
    "one_arrow_pencil",
    "ordinary_pca",
    "projection_matrix",
    "quiver_pca",
    "rayleigh",
    "solve_pencil",
    "split_blocks",
    "tie_flags",
]
