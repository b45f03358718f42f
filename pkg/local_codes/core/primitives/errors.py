"""
Exception hierarchy shared by every subsystem.
"""

from __future__ import annotations

from typing import Optional, Sequence, Tuple


class LocalCodesError(RuntimeError):
    """Base class for all errors raised by the toolkit."""


class ShapeMismatch(LocalCodesError, ValueError):
    """Raised when matrix or vector shapes do not agree."""


class ImageNotContained(LocalCodesError):
    """Raised when the image span is not a subspace of the kernel span."""


class ChainConditionViolated(LocalCodesError):
    """Raised when h1 · h2ᵀ has a nonzero entry at (row i of h1, row j of h2)."""

    def __init__(self, i: int, j: int) -> None:
        super().__init__(f"Chain condition violated at h1 row {i}, h2 row {j}.")
        self.i = i
        self.j = j


class DimensionOutOfRange(LocalCodesError, ValueError):
    """Raised when a cell dimension is outside the admissible range."""


class NotSimplicial(LocalCodesError):
    """Raised when a simplicial operation receives a cubical complex."""


class UnsupportedDimension(LocalCodesError):
    """Raised when an operation is only implemented for low dimensions."""


class NotClosedManifold(LocalCodesError):
    """Raised when a complex fails the combinatorial closed-manifold check."""


class NotSimplicialMap(LocalCodesError):
    """Raised when a vertex map does not send simplices to simplices."""


class NoCoordinates(LocalCodesError):
    """Raised when a geometric operation needs vertex coordinates."""


class PointOutsideComplex(LocalCodesError, ValueError):
    """Raised when a point does not lie in the realization of a complex."""


class InfeasibleCaps(LocalCodesError):
    """Raised when the requested caps cannot be placed with the separation asked for."""


class DimensionError(LocalCodesError, ValueError):
    """Raised when source and target dimensions are incompatible."""


class ResampleBudgetExhausted(LocalCodesError):
    """Raised when resampling fails to clear every bad event within budget."""

    def __init__(
        self,
        stage: str,
        resamples: int,
        *,
        worst_cell: Optional[Sequence[int]] = None,
        worst_count: Optional[int] = None,
    ) -> None:
        detail = ""
        if worst_cell is not None:
            detail = f" Worst cell {tuple(worst_cell)} met by {worst_count} simplices."
        super().__init__(f"Stage '{stage}' exhausted its budget after {resamples} resamples.{detail}")
        self.stage = stage
        self.resamples = resamples
        self.worst_cell: Optional[Tuple[int, ...]] = tuple(worst_cell) if worst_cell is not None else None
        self.worst_count = worst_count


class CompositionBoundViolated(LocalCodesError):
    """Raised when a measured composite constant exceeds the product bound."""


class LatticeExhausted(LocalCodesError):
    """Raised when no unoccupied lattice point is left near a target."""


class CubeTooSmall(LocalCodesError):
    """Raised when the lattice cube cannot host the requested padding."""


class FormatError(LocalCodesError, ValueError):
    """Raised when an interchange file cannot be parsed."""

    def __init__(self, message: str, *, source: Optional[str] = None, field: Optional[str] = None) -> None:
        where = []
        if source:
            where.append(source)
        if field:
            where.append(f"field '{field}'")
        prefix = f"{': '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{message}")
        self.source = source
        self.field = field
