from learn.blowup import BlowupGraph, delta_blowup, node_name
from learn.fit import FittedRepresentation, VertexData, fit_edge, fit_edge_maps
from learn.pipeline import LearnedPCs, learn_then_pca

__all__ = [
    "BlowupGraph",
    "FittedRepresentation",
    "LearnedPCs",
    "VertexData",
    "delta_blowup",
    "fit_edge",
    "fit_edge_maps",
    "learn_then_pca",
    "node_name",
]
