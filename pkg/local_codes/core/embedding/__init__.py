"""
Coarse embeddings into Euclidean space and their certificates.
"""

from .caps import Cap, CapLayout, color_count, facet_graph, greedy_color, place_caps, sample_in_cap
from .engine import CoarseEmbedder, EmbeddedComplex, EmbedParams, EmbedScales, gg_embed
from .general_position import GeneralPositionResult, perturb_general_position, simplex_distance
from .spatial import (
    BlockCount,
    CoarseCertificate,
    ColorCellCount,
    CompositionCheck,
    UnitGrid,
    block_counts,
    cell_hits,
    certify_coarse,
    certify_embedding,
    certify_points,
    certify_simplicial,
    color_cell_counts,
    compose_certificates,
    distortion,
)

__all__ = [
    "BlockCount",
    "Cap",
    "CapLayout",
    "CoarseCertificate",
    "CoarseEmbedder",
    "ColorCellCount",
    "CompositionCheck",
    "EmbedParams",
    "EmbedScales",
    "EmbeddedComplex",
    "GeneralPositionResult",
    "UnitGrid",
    "block_counts",
    "cell_hits",
    "certify_coarse",
    "certify_embedding",
    "certify_points",
    "certify_simplicial",
    "color_cell_counts",
    "color_count",
    "compose_certificates",
    "distortion",
    "facet_graph",
    "gg_embed",
    "greedy_color",
    "perturb_general_position",
    "place_caps",
    "sample_in_cap",
    "simplex_distance",
]
