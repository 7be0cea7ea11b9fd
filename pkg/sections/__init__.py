from sections.bounds import (
    Stalk,
    dimension_lower_bound,
    group_fixed_space,
    merge_lower_bound,
    path_counts,
    pushforward_stalk,
)
from sections.naive import compatibility_matrix, naive_sections
from sections.pipeline import PipelineTrace, SectionSpace, sections
from sections.reduce import AcycReduction, AcycTrace, SCReduction, acyc_reduce, sc_reduce
from sections.replace import ArbReplacement, arb_replace
from sections.representation import BlockLayout, Representation, check_section

__all__ = [
    "AcycReduction",
    "AcycTrace",
    "ArbReplacement",
    "BlockLayout",
    "PipelineTrace",
    "Representation",
    "SCReduction",
    "SectionSpace",
    "Stalk",
    "acyc_reduce",
    "arb_replace",
    "check_section",
    "compatibility_matrix",
    "dimension_lower_bound",
    "group_fixed_space",
    "merge_lower_bound",
    "naive_sections",
    "path_counts",
    "pushforward_stalk",
    "sc_reduce",
    "sections",
]
