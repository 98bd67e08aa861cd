"""Exact-arithmetic laboratory for image partition regularity experiments.

Thin wrapper over the C++ core. Complex artifacts (matrices, colorings,
certificates) cross the boundary as canonical JSON strings; scalars are
"p/q" rational literals.
"""

from ._ipr import (
    IprError,
    __version__,
    build_family,
    classify,
    compactness_bound,
    diagonal_sum,
    dyadic_color,
    dyadic_support,
    ex16_obstruction,
    ex16_witness,
    ex17_witness,
    extension_pipeline,
    find_avoiding_coloring,
    find_witness,
    mt_enumerate,
    phi,
    segmented_solve,
    segmented_spec_from_blocks,
    separation_depth,
    verify,
)

__all__ = [
    "IprError",
    "__version__",
    "build_family",
    "classify",
    "compactness_bound",
    "diagonal_sum",
    "dyadic_color",
    "dyadic_support",
    "ex16_obstruction",
    "ex16_witness",
    "ex17_witness",
    "extension_pipeline",
    "find_avoiding_coloring",
    "find_witness",
    "mt_enumerate",
    "phi",
    "segmented_solve",
    "segmented_spec_from_blocks",
    "separation_depth",
    "verify",
]
