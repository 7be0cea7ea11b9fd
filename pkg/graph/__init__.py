from graph.components import tarjan_msc
from graph.ears import Ear, EarDecomposition, decreasing_path, ear_decompose, induced_arborescence
from graph.quiver import Arborescence, Edge, Quiver, QuiverPath, Subquiver, spanning_subquiver
from graph.sorting import Augmentation, augment, induced_subquiver, spanning_arborescence, top_sort

__all__ = [
    "Arborescence",
    "Augmentation",
    "Ear",
    "EarDecomposition",
    "Edge",
    "Quiver",
    "QuiverPath",
    "Subquiver",
    "augment",
    "decreasing_path",
    "ear_decompose",
    "induced_arborescence",
    "induced_subquiver",
    "spanning_arborescence",
    "spanning_subquiver",
    "tarjan_msc",
    "top_sort",
]
