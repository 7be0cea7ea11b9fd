"""Exact rank of rational matrices, for checking floating-point kernels."""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def rank(matrix) -> int:
    a = np.asarray(matrix)
    rows = [[Fraction(float(x)) for x in row] for row in a]
    n_rows = len(rows)
    n_cols = a.shape[1] if a.ndim == 2 else 0
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c] / rows[r][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == n_rows:
            break
    return r


def nullity(matrix) -> int:
    a = np.asarray(matrix)
    return a.shape[1] - rank(a) if a.ndim == 2 else 0
