"""Eschenburg-Kruggel spaces: enumeration, invariants and classification."""

from ._ekspace import (
    EkspaceError,
    __version__,
    canonical_form,
    classify,
    condition_c,
    difference_matrix,
    enumerate,
    growth_counts,
    integer_invariants,
    is_admissible,
    is_eschenburg_kruggel,
    is_free,
    ks_invariants,
    lens_invariants,
    rationalize,
)

__all__ = [
    "EkspaceError",
    "__version__",
    "canonical_form",
    "classify",
    "condition_c",
    "difference_matrix",
    "enumerate",
    "growth_counts",
    "integer_invariants",
    "is_admissible",
    "is_eschenburg_kruggel",
    "is_free",
    "ks_invariants",
    "lens_invariants",
    "rationalize",
]
