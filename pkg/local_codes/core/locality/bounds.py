"""
Numerical checks of the distance and dimension-distance tradeoff bounds for
local codes.

Both bounds are asymptotic, so the constants are configuration
(``BoundThresholds``) and a failed check is reported in the result, never
raised.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Union

from ..primitives.f2 import SearchBudget, encode_weight
from ..topology.code import CodeReport, CssCode, report
from .placement import LocalityCertificate

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundThresholds:
    distance: float = 4.0
    tradeoff: float = 4.0

    def to_dict(self) -> Dict[str, Any]:
        return {"distance": self.distance, "tradeoff": self.tradeoff}

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "BoundThresholds":
        return cls(float(payload.get("distance", 4.0)), float(payload.get("tradeoff", 4.0)))


@dataclass(frozen=True)
class BoundReport:
    size: int
    n: int
    d: Union[int, float]
    dim: int
    distance_ratio: float  # d / V^((n-1)/n)
    tradeoff_ratio: float  # dim * d^(2/(n-1)) / V
    certificate: LocalityCertificate
    exact: bool
    thresholds: BoundThresholds = BoundThresholds()

    @property
    def distance_passes(self) -> bool:
        return self.distance_ratio <= self.thresholds.distance

    @property
    def tradeoff_passes(self) -> bool:
        return self.dim == 0 or self.tradeoff_ratio <= self.thresholds.tradeoff

    @property
    def passes(self) -> bool:
        return self.distance_passes and self.tradeoff_passes

    @property
    def label(self) -> str:
        if self.dim == 0:
            return "vacuous"
        return "exact" if self.exact else "upper-bound-only"

    def describe(self) -> str:
        verdict = "pass" if self.passes else "fail"
        return (
            f"V={self.size} n={self.n} dim={self.dim} d={self.d} "
            f"distance_ratio={self.distance_ratio:.6f} tradeoff_ratio={self.tradeoff_ratio:.6f} "
            f"[{verdict}, {self.label}]"
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "V": self.size,
            "n": self.n,
            "d": encode_weight(self.d),
            "dim": self.dim,
            "distance_ratio": _finite(self.distance_ratio),
            "tradeoff_ratio": _finite(self.tradeoff_ratio),
            "exact": self.exact,
            "label": self.label,
            "passes": {"distance": self.distance_passes, "tradeoff": self.tradeoff_passes},
            "thresholds": self.thresholds.to_dict(),
            "certificate": self.certificate.to_dict(),
        }


def _finite(value: float) -> Union[float, str]:
    return "infinity" if value == math.inf else value


def distance_ratio(d: Union[int, float], size: int, n: int) -> float:
    if size == 0 or d == math.inf:
        return 0.0
    return float(d) / size ** ((n - 1) / n)


def tradeoff_ratio(dim: int, d: Union[int, float], size: int, n: int) -> float:
    if dim == 0 or size == 0:
        return 0.0
    if n == 1:
        # d^(2/(n-1)) has no finite exponent; only d <= 1 stays bounded
        return 0.0 if d <= 1 else math.inf
    return dim * float(d) ** (2.0 / (n - 1)) / size


def check_bounds(
    code: CssCode,
    certificate: LocalityCertificate,
    thresholds: Optional[BoundThresholds] = None,
    *,
    code_report: Optional[CodeReport] = None,
    budget: Optional[SearchBudget] = None,
) -> BoundReport:
    """
    Evaluate both ratios for ``code`` placed in dimension ``certificate.n``.

    A dim-0 code has infinite distance; it passes both checks vacuously.
    """
    thresholds = thresholds or BoundThresholds()
    if not certificate.injective:
        LOGGER.warning("Bound check on a non-injective placement of %s", code.name or "code")
    result = code_report or report(code, budget)
    n = certificate.n
    d = result.d
    bound = BoundReport(
        size=result.size,
        n=n,
        d=d,
        dim=result.dim,
        distance_ratio=distance_ratio(d, result.size, n),
        tradeoff_ratio=tradeoff_ratio(result.dim, d, result.size, n),
        certificate=certificate,
        exact=result.exact,
        thresholds=thresholds,
    )
    LOGGER.info("\n%s\n[BOUND CHECK] %s\n%s\n%s", "=" * 80, code.name or "(unnamed)", bound.describe(), "=" * 80)
    return bound


__all__ = [
    "BoundReport",
    "BoundThresholds",
    "check_bounds",
    "distance_ratio",
    "tradeoff_ratio",
]
