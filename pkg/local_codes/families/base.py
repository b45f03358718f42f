"""
Base interface for code families that can be swept by size.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from ..core.locality.placement import Placement
from ..core.topology.code import CssCode
from ..core.topology.complex import CellComplex


@dataclass(frozen=True)
class FamilyInstance:
    """One member of a family together with its lattice placement."""

    family: str
    code: CssCode
    placement: Placement
    parameters: Dict[str, Any] = field(default_factory=dict)
    complex: Optional[CellComplex] = field(default=None, compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.placement.n


class CodeFamily(ABC):
    """
    A family of local codes indexed by an integer size parameter ``L``.

    Subclasses build the code and its placement; certification and bound
    checks are shared by every family.
    """

    name: str = "family"

    def __init__(self, n: int = 2) -> None:
        self.n = n

    @abstractmethod
    def build(self, size: int, *, seed: int = 7) -> FamilyInstance:
        raise NotImplementedError

    def describe(self) -> str:
        return f"{self.name}(n={self.n})"

    def to_dict(self) -> Dict[str, Any]:
        return {"family": self.name, "n": self.n}
