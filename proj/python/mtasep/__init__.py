"""Integrable multispecies totally asymmetric exclusion processes.

Thin wrapper around the compiled extension: a catalog of two-species
interaction rules, their N-species extensions, exact Yang-Baxter
integrability checks, Bethe-ansatz transition kernels evaluated by
contour quadrature, and a continuous-time simulator for cross-checks.
"""

from ._core import (
    __version__,
    UnknownLabelError,
    NonStochasticError,
    bar_matrix,
    build_matrix,
    catalog_labels,
    catalog_matrix,
    check_yang_baxter,
    classify,
    conservation,
    extend_natural,
    kernel,
    simulate,
)

__all__ = [
    "__version__",
    "UnknownLabelError",
    "NonStochasticError",
    "bar_matrix",
    "build_matrix",
    "catalog_labels",
    "catalog_matrix",
    "check_yang_baxter",
    "classify",
    "conservation",
    "extend_natural",
    "kernel",
    "simulate",
]
