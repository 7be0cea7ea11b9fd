from __future__ import annotations

import math


def format_number(value: float, digits: int = 6) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, int):
        return str(value)
    if math.isnan(value) or math.isinf(value):
        return str(value)
    if value == 0:
        return "0"
    return f"{value:.{digits}g}"


def format_seconds(value: float) -> str:
    if value < 1e-3:
        return f"{value * 1e6:.0f} us"
    if value < 1:
        return f"{value * 1e3:.1f} ms"
    return f"{value:.2f} s"


def format_vector(values, digits: int = 4) -> str:
    return "[" + ", ".join(format_number(float(v), digits) for v in values) + "]"
