from __future__ import annotations

from pathlib import Path
from typing import Optional, Union

import numpy as np

from errors import ParseError, WidthMismatch
from qpca.dataset import Dataset
from sections.representation import BlockLayout


def read_samples(path: Union[str, Path]) -> np.ndarray:
    """Samples from a CSV file, one per row; ``#`` starts a comment."""
    try:
        samples = np.loadtxt(path, delimiter=",", comments="#", ndmin=2, dtype=np.float64)
    except OSError as exc:
        raise ParseError(f"cannot read dataset: {exc}", str(path)) from exc
    except ValueError as exc:
        raise ParseError(str(exc), str(path)) from exc
    if not np.all(np.isfinite(samples)):
        raise ParseError("dataset contains non-finite values", str(path))
    return samples


def load_dataset(
    path: Union[str, Path], layout: Optional[BlockLayout] = None, center: bool = True
) -> Dataset:
    samples = read_samples(path)
    if layout is not None and samples.size and samples.shape[1] != layout.total:
        raise WidthMismatch(f"{path}: {samples.shape[1]} columns, total dimension is {layout.total}")
    if not samples.size and layout is not None:
        samples = samples.reshape(0, layout.total)
    if center:
        return Dataset.from_samples(samples, layout)
    return Dataset(samples, centred=True, layout=layout)


def save_samples(path: Union[str, Path], samples, header: str = "") -> None:
    np.savetxt(path, np.asarray(samples, dtype=np.float64), delimiter=",", fmt="%.17g", header=header)
