"""
Primitive building blocks: field arithmetic, errors and run traces.
"""

from .errors import (
    ChainConditionViolated,
    CompositionBoundViolated,
    CubeTooSmall,
    DimensionError,
    DimensionOutOfRange,
    FormatError,
    ImageNotContained,
    InfeasibleCaps,
    LatticeExhausted,
    LocalCodesError,
    NoCoordinates,
    NotClosedManifold,
    NotSimplicial,
    NotSimplicialMap,
    PointOutsideComplex,
    ResampleBudgetExhausted,
    ShapeMismatch,
    UnsupportedDimension,
)
from .f2 import (
    BitMatrix,
    BitVector,
    CosetSearchResult,
    GF2Basis,
    SearchBudget,
    min_coset_weight,
    nullspace_basis,
    rank,
    span_contains,
)
from .trace import ResampleRound, ResampleTrace

__all__ = [
    "BitMatrix",
    "BitVector",
    "ChainConditionViolated",
    "CompositionBoundViolated",
    "CosetSearchResult",
    "CubeTooSmall",
    "DimensionError",
    "DimensionOutOfRange",
    "FormatError",
    "GF2Basis",
    "ImageNotContained",
    "InfeasibleCaps",
    "LatticeExhausted",
    "LocalCodesError",
    "NoCoordinates",
    "NotClosedManifold",
    "NotSimplicial",
    "NotSimplicialMap",
    "PointOutsideComplex",
    "ResampleBudgetExhausted",
    "ResampleRound",
    "ResampleTrace",
    "SearchBudget",
    "ShapeMismatch",
    "UnsupportedDimension",
    "min_coset_weight",
    "nullspace_basis",
    "rank",
    "span_contains",
]
