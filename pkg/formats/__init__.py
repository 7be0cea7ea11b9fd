from formats.dataset import load_dataset, read_samples, save_samples
from formats.problem import EdgeSpec, ProblemFile
from formats.report import ResultReport, rows, values

__all__ = [
    "EdgeSpec",
    "ProblemFile",
    "ResultReport",
    "load_dataset",
    "read_samples",
    "rows",
    "save_samples",
    "values",
]
