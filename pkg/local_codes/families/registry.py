"""
Family registry and the built-in code families.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Any, Callable, Dict, Iterable, Optional

from ..core.embedding.engine import EmbedParams, gg_embed
from ..core.locality.placement import Placement, fold_torus, pad_code, placement_from_embedding
from ..core.topology.code import (
    CssCode,
    code_from_complex,
    cycle_matrix,
    hypergraph_product,
    repetition_matrix,
    steane_code,
)
from ..core.topology.complex import cycle
from .base import CodeFamily, FamilyInstance

LOGGER = logging.getLogger(__name__)


class ToricFamily(CodeFamily):
    """Folded n-dimensional toric codes, qubits on k-cells."""

    name = "toric"

    def __init__(self, n: int = 2, k: int = 1) -> None:
        super().__init__(n)
        self.k = k

    def build(self, size: int, *, seed: int = 7) -> FamilyInstance:
        placement = fold_torus(self.n, size, self.k)
        return FamilyInstance(self.name, placement.code, placement, {"L": size, "k": self.k})

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(), "k": self.k}


def grid_placement(code: CssCode, bits: int, checks: int, n: int) -> Placement:
    """
    Lay out a square hypergraph product on the plane: bit-pair qubits at even
    points, check-pair qubits at odd points, zero in any further coordinate.
    """
    pad = (0,) * (n - 2)
    points = [(2 * i, 2 * j) + pad for i in range(bits) for j in range(bits)]
    points += [(2 * a + 1, 2 * b + 1) + pad for a in range(checks) for b in range(checks)]
    return Placement(code, tuple(points), n)


class HypergraphProductFamily(CodeFamily):
    """Products of two equal classical codes (``repetition`` or ``cycle``)."""

    name = "hgp"

    def __init__(self, n: int = 2, kind: str = "repetition") -> None:
        if n < 2:
            raise ValueError("Hypergraph products are laid out in at least two dimensions.")
        if kind not in ("repetition", "cycle"):
            raise ValueError(f"Unknown classical code '{kind}'. Available: ('repetition', 'cycle')")
        super().__init__(n)
        self.kind = kind

    def build(self, size: int, *, seed: int = 7) -> FamilyInstance:
        matrix = repetition_matrix(size) if self.kind == "repetition" else cycle_matrix(size)
        code = hypergraph_product(matrix, matrix)
        code = CssCode(code.h1, code.h2, name=f"hgp({self.kind}:{size})")
        placement = grid_placement(code, matrix.cols, matrix.rows, self.n)
        return FamilyInstance(self.name, code, placement, {"L": size, "kind": self.kind})

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(), "kind": self.kind}


class SteaneFamily(CodeFamily):
    """The single [[7,1,3]] code on a 3x3 patch; the size parameter is ignored."""

    name = "steane"

    def build(self, size: int, *, seed: int = 7) -> FamilyInstance:
        if self.n < 2:
            raise ValueError("The steane patch needs n >= 2.")
        code = steane_code()
        points = tuple((i % 3, i // 3) + (0,) * (self.n - 2) for i in range(code.size))
        return FamilyInstance(self.name, code, Placement(code, points, self.n), {"L": size})


class PaddedFamily(CodeFamily):
    """Another family grown by ``factor`` with a path block."""

    name = "padded"

    def __init__(self, n: int = 2, inner: str = "toric", factor: float = 4.0, **options: Any) -> None:
        if inner == "padded":
            raise ValueError("A padded family cannot wrap itself.")
        super().__init__(n)
        self.inner = create_family(inner, n=n, **options)
        self.factor = factor

    def build(self, size: int, *, seed: int = 7) -> FamilyInstance:
        base = self.inner.build(size, seed=seed)
        target = int(round(self.factor * base.code.size))
        code, placement = pad_code(base.code, base.placement, target)
        return FamilyInstance(self.name, code, placement, {**base.parameters, "inner": self.inner.name, "V": target})

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(), "inner": self.inner.to_dict(), "factor": self.factor}


class EmbeddedCycleFamily(CodeFamily):
    """Cycle complexes run through the coarse embedding engine, qubits on edges."""

    name = "embedded"

    def __init__(self, n: int = 2, params: Optional[EmbedParams] = None) -> None:
        super().__init__(n)
        self.params = replace(params or EmbedParams(delta=0.5), n=n)

    def build(self, size: int, *, seed: int = 7) -> FamilyInstance:
        x = cycle(size)
        embedded = gg_embed(x, replace(self.params, seed=seed))
        code = code_from_complex(x, 1)
        code = CssCode(code.h1, code.h2, name=f"cycle({size})")
        placement = placement_from_embedding(code, embedded, x, 1, epsilon=self.params.epsilon)
        return FamilyInstance(
            self.name,
            code,
            placement,
            {"L": size, "backward": embedded.certificate.backward, "forward": embedded.certificate.forward},
            complex=x,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(), "params": self.params.to_dict()}


@dataclass(frozen=True)
class FamilySpec:
    name: str
    factory: Callable[..., CodeFamily]
    description: str = ""


_FAMILY_REGISTRY: Dict[str, FamilySpec] = {
    "toric": FamilySpec("toric", ToricFamily, "folded toric codes"),
    "hgp": FamilySpec("hgp", HypergraphProductFamily, "hypergraph products on a grid"),
    "steane": FamilySpec("steane", SteaneFamily, "the [[7,1,3]] code"),
    "padded": FamilySpec("padded", PaddedFamily, "any family padded with a path block"),
    "embedded": FamilySpec("embedded", EmbeddedCycleFamily, "embedded cycle complexes"),
}


def register_family(spec: FamilySpec) -> None:
    """Register an additional family; names are unique."""
    if spec.name in _FAMILY_REGISTRY:
        raise ValueError(f"Family '{spec.name}' is already registered.")
    _FAMILY_REGISTRY[spec.name] = spec


def list_families() -> Iterable[str]:
    return tuple(_FAMILY_REGISTRY.keys())


def create_family(name: str, **options: Any) -> CodeFamily:
    try:
        spec = _FAMILY_REGISTRY[name]
    except KeyError as exc:
        raise ValueError(f"Unknown family '{name}'. Available: {list_families()}") from exc
    LOGGER.debug("Creating family %s with %s", name, options)
    return spec.factory(**options)


__all__ = [
    "EmbeddedCycleFamily",
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
