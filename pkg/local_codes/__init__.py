"""
High-level exports for local quantum codes built from embedded cell complexes.

The package exposes CSS codes and cell complexes, the coarse embedding
engine, lattice placements with their locality certificates, and the bound
checks run over code families.
"""

__version__ = "0.1.0"

from .core import (
    BoundThresholds,
    CellComplex,
    CodeReport,
    CssCode,
    EmbeddedComplex,
    EmbedParams,
    LocalCodesError,
    LocalityCertificate,
    Placement,
    SearchBudget,
    certify_local,
    check_bounds,
    code_from_complex,
    fold_torus,
    frontier_survey,
    gg_embed,
    pad_code,
    placement_from_embedding,
    report,
    toric_code,
)
from .families import CodeFamily, create_family, list_families, register_family

__all__ = [
    "__version__",
    "BoundThresholds",
    "CellComplex",
    "CodeFamily",
    "CodeReport",
    "CssCode",
    "EmbedParams",
    "EmbeddedComplex",
    "LocalCodesError",
    "LocalityCertificate",
    "Placement",
    "SearchBudget",
    "certify_local",
    "check_bounds",
    "code_from_complex",
    "create_family",
    "fold_torus",
    "frontier_survey",
    "gg_embed",
    "list_families",
    "pad_code",
    "placement_from_embedding",
    "register_family",
    "report",
    "toric_code",
]
