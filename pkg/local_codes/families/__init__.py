"""
Code families swept by the frontier survey.
"""

from .base import CodeFamily, FamilyInstance
from .registry import (
    EmbeddedCycleFamily,
    FamilySpec,
    HypergraphProductFamily,
    PaddedFamily,
    SteaneFamily,
    ToricFamily,
    create_family,
    grid_placement,
    list_families,
    register_family,
)

__all__ = [
    "CodeFamily",
    "EmbeddedCycleFamily",
    "FamilyInstance",
    "FamilySpec",
    "HypergraphProductFamily",
    "PaddedFamily",
    "SteaneFamily",
    "ToricFamily",
    "create_family",
    "grid_placement",
    "list_families",
    "register_family",
]
