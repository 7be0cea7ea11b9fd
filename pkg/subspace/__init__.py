from subspace.ops import (
    compose_path,
    equalise,
    intersect,
    kernel,
    pinv,
    preimage,
    principal_angle_distance,
    restrict,
)
from subspace.space import LinMap, Subspace, as_linmap

__all__ = [
    "LinMap",
    "Subspace",
    "as_linmap",
    "compose_path",
    "equalise",
    "intersect",
    "kernel",
    "pinv",
    "preimage",
    "principal_angle_distance",
    "restrict",
]
