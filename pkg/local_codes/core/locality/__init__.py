"""
Lattice placements, locality certificates, bound checks and frontier surveys.
"""

from .bounds import BoundReport, BoundThresholds, check_bounds, distance_ratio, tradeoff_ratio
from .placement import (
    LocalityCertificate,
    Placement,
    certify_local,
    empty_code,
    fold_point,
    fold_torus,
    pad_code,
    path_block,
    placement_from_embedding,
    serpentine,
    snap_to_lattice,
)
from .survey import COLUMNS, FORMAT_VERSION, SurveyTable, SweepParams, frontier_survey, parse_sizes, survey_families

__all__ = [
    "BoundReport",
    "BoundThresholds",
    "COLUMNS",
    "FORMAT_VERSION",
    "LocalityCertificate",
    "Placement",
    "SurveyTable",
    "SweepParams",
    "certify_local",
    "check_bounds",
    "distance_ratio",
    "empty_code",
    "fold_point",
    "fold_torus",
    "frontier_survey",
    "pad_code",
    "parse_sizes",
    "path_block",
    "placement_from_embedding",
    "serpentine",
    "snap_to_lattice",
    "survey_families",
    "tradeoff_ratio",
]
