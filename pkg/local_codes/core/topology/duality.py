"""
Dual-cell chains of a closed manifold and their projection back onto the
triangulation. Dual p-cells are indexed by the primal (d-p)-cells they cross.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from ..primitives.errors import DimensionOutOfRange, NotClosedManifold, ShapeMismatch
from ..primitives.f2 import BitMatrix, BitVector, GF2Basis
from .complex import CellComplex, ChainVector, Simplex, is_closed_manifold
from .subdivision import barycentric_subdivide, _require_simplicial

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class DualChain:
    """A chain of dual p-cells; index i is the dual of primal (d-p)-cell i."""

    dim: int
    vector: BitVector

    @property
    def vol(self) -> int:
        return self.vector.weight

    def to_dict(self) -> Dict[str, object]:
        return {"dim": self.dim, "vector": self.vector.to_dict()}


def _require_closed(x: CellComplex) -> None:
    if not is_closed_manifold(x):
        raise NotClosedManifold("Duality needs a closed manifold (pseudomanifold with connected links).")


def dual_boundary(x: CellComplex, p: int) -> BitMatrix:
    """Boundary of the dual structure in dimension p: boundary[d-p+1] transposed."""
    d = x.dims
    if not 1 <= p <= d:
        raise DimensionOutOfRange(f"Dual dimension {p} outside [1, {d}].")
    return x.boundary[d - p + 1].transpose()


def dual_chain(x: CellComplex, z: ChainVector) -> DualChain:
    """The dual (d-k)-chain of the k-cochain ``z``; volumes agree."""
    _require_closed(x)
    d = x.dims
    if not 0 < z.dim < d:
        raise DimensionOutOfRange(f"Cochain dimension {z.dim} must lie in (0, {d}).")
    if z.vector.length != x.cells[z.dim]:
        raise ShapeMismatch("Cochain length does not match the cell count.")
    return DualChain(d - z.dim, z.vector)


def apply_dual_boundary(x: CellComplex, w: DualChain) -> DualChain:
    return DualChain(w.dim - 1, dual_boundary(x, w.dim).apply(w.vector))


def coboundary_of(x: CellComplex, z: ChainVector) -> ChainVector:
    return ChainVector(z.dim + 1, x.coboundary(z.dim).apply(z.vector))


@dataclass(frozen=True)
class Projection:
    chain: ChainVector
    subdivided: ChainVector  # dual chain written on the barycentric subdivision
    ratio: float  # vol(P) / vol(w), the measured projection constant

    def to_dict(self) -> Dict[str, object]:
        return {"chain": self.chain.to_dict(), "subdivided_vol": self.subdivided.vol, "ratio": self.ratio}


def _dual_cell_pieces(x: CellComplex, primal: Simplex) -> List[Simplex]:
    """Simplices of the barycentric subdivision forming the dual cell of ``primal``."""
    d = x.dims
    offsets = [0]
    for count in x.cells:
        offsets.append(offsets[-1] + count)

    def vid(s: Simplex) -> int:
        k = len(s) - 1
        return offsets[k] + x.simplex_index[k][s]

    pieces: List[Simplex] = []

    def extend(chain: List[Simplex]) -> None:
        top = chain[-1]
        if len(top) == d + 1:
            pieces.append(tuple(sorted(vid(s) for s in chain)))
            return
        for v in range(x.vertex_count):
            if v in top:
                continue
            bigger = tuple(sorted(top + (v,)))
            if bigger in x.simplex_index[len(bigger) - 1]:
                extend(chain + [bigger])

    extend([primal])
    return pieces


def project_to_triangulation(x: CellComplex, w: DualChain) -> Projection:
    """
    Write ``w`` on the barycentric subdivision, then push it to the
    triangulation with the vertex map b_sigma -> min vertex of sigma.
    Degenerate images vanish.
    """
    _require_simplicial(x, "project_to_triangulation")
    _require_closed(x)
    d = x.dims
    p = w.dim
    primal_dim = d - p
    if not 0 < p < d:
        raise DimensionOutOfRange(f"Dual chain dimension {p} must lie in (0, {d}).")
    sd = barycentric_subdivide(x)
    sd_index = sd.simplex_index[p]

    flat: List[Simplex] = [s for level in x.simplices for s in level]
    sub_bits = 0
    for i in w.vector.support:
        for piece in _dual_cell_pieces(x, x.simplices[primal_dim][i]):
            sub_bits ^= 1 << sd_index[piece]

    out_bits = 0
    for piece_index in _bits(sub_bits):
        piece = sd.simplices[p][piece_index]
        image = tuple(sorted({min(flat[v]) for v in piece}))
        if len(image) == p + 1:
            out_bits ^= 1 << x.simplex_index[p][image]

    chain = ChainVector(p, BitVector.from_bits(x.cells[p], out_bits))
    subdivided = ChainVector(p, BitVector.from_bits(sd.cells[p], sub_bits))
    ratio = chain.vol / w.vol if w.vol else 0.0
    return Projection(chain, subdivided, ratio)


def _bits(value: int) -> List[int]:
    out = []
    while value:
        low = value & -value
        out.append(low.bit_length() - 1)
        value ^= low
    return out


def subdivide_chain(x: CellComplex, chain: ChainVector) -> ChainVector:
    """Image of a primal chain under the barycentric subdivision chain map."""
    sd = barycentric_subdivide(x)
    offsets = [0]
    for count in x.cells:
        offsets.append(offsets[-1] + count)
    bits = 0
    for i in chain.support:
        s = x.simplices[chain.dim][i]
        for order in itertools.permutations(s):
            flag = tuple(sorted(offsets[j] + x.simplex_index[j][tuple(sorted(order[: j + 1]))] for j in range(len(order))))
            bits ^= 1 << sd.simplex_index[chain.dim][flag]
    return ChainVector(chain.dim, BitVector.from_bits(sd.cells[chain.dim], bits))


def same_homology_class(x: CellComplex, w: DualChain, projection: Projection) -> bool:
    """True when the subdivided dual chain and the subdivided projection differ by a boundary."""
    sd = barycentric_subdivide(x)
    p = w.dim
    difference = projection.subdivided.vector + subdivide_chain(x, projection.chain).vector
    if p == sd.dims:
        return difference.weight == 0
    boundaries = GF2Basis(sd.boundary[p + 1].transpose().row_bits)
    return boundaries.contains(difference.bits)


def is_boundary(x: CellComplex, chain: ChainVector) -> bool:
    if chain.dim >= x.dims:
        return chain.vol == 0
    return GF2Basis(x.boundary[chain.dim + 1].transpose().row_bits).contains(chain.vector.bits)


__all__ = [
    "DualChain",
    "Projection",
    "apply_dual_boundary",
    "coboundary_of",
    "dual_boundary",
    "dual_chain",
    "is_boundary",
    "project_to_triangulation",
    "same_homology_class",
    "subdivide_chain",
]
