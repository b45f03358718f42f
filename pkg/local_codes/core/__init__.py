"""
Core package bundling field arithmetic, chain complexes, the coarse embedding
engine and lattice locality.
"""

from .embedding import (
    CoarseCertificate,
    CoarseEmbedder,
    EmbeddedComplex,
    EmbedParams,
    UnitGrid,
    certify_coarse,
    certify_embedding,
    certify_simplicial,
    compose_certificates,
    gg_embed,
    perturb_general_position,
)
from .locality import (
    BoundReport,
    BoundThresholds,
    LocalityCertificate,
    Placement,
    SurveyTable,
    SweepParams,
    certify_local,
    check_bounds,
    fold_point,
    fold_torus,
    frontier_survey,
    pad_code,
    placement_from_embedding,
)
from .primitives import (
    BitMatrix,
    BitVector,
    LocalCodesError,
    ResampleTrace,
    SearchBudget,
    min_coset_weight,
    nullspace_basis,
    rank,
)
from .topology import (
    CellComplex,
    CodeReport,
    CssCode,
    code_from_complex,
    cosystole,
    cubical_torus,
    edgewise_subdivide,
    hypergraph_product,
    nerve_complex,
    nerve_map,
    report,
    star_cover,
    steane_code,
    systole,
    toric_code,
)

__all__ = [
    "BitMatrix",
    "BitVector",
    "BoundReport",
    "BoundThresholds",
    "CellComplex",
    "CoarseCertificate",
    "CoarseEmbedder",
    "CodeReport",
    "CssCode",
    "EmbedParams",
    "EmbeddedComplex",
    "LocalCodesError",
    "LocalityCertificate",
    "Placement",
    "ResampleTrace",
    "SearchBudget",
    "SurveyTable",
    "SweepParams",
    "UnitGrid",
    "certify_coarse",
    "certify_embedding",
    "certify_local",
    "certify_simplicial",
    "check_bounds",
    "code_from_complex",
    "compose_certificates",
    "cosystole",
    "cubical_torus",
    "edgewise_subdivide",
    "fold_point",
    "fold_torus",
    "frontier_survey",
    "gg_embed",
    "hypergraph_product",
    "min_coset_weight",
    "nerve_complex",
    "nerve_map",
    "nullspace_basis",
    "pad_code",
    "perturb_general_position",
    "placement_from_embedding",
    "rank",
    "report",
    "star_cover",
    "steane_code",
    "systole",
    "toric_code",
]
