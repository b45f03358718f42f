"""
Qubit placements on the integer lattice and their locality certificates.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..embedding.engine import EmbeddedComplex
from ..primitives.errors import CubeTooSmall, FormatError, LatticeExhausted, ShapeMismatch
from ..primitives.f2 import BitMatrix
from ..topology.code import CssCode, check_graph, direct_sum, toric_code
from ..topology.complex import CellComplex, Lineage, Simplex

LOGGER = logging.getLogger(__name__)

Point = Tuple[int, ...]

DEFAULT_EPSILON = 0.25
SNAP_RADIUS = 1.0
CUBE_LIMIT = 16.0


@dataclass(frozen=True)
class Placement:
    code: CssCode = field(compare=False, repr=False)
    points: Tuple[Point, ...]
    n: int
    scale: float = 1.0  # lattice spacing the points were snapped with, in embedding units

    def __post_init__(self) -> None:
        if len(self.points) != self.code.size:
            raise ShapeMismatch(f"Placement has {len(self.points)} points for {self.code.size} qubits.")
        if any(len(p) != self.n for p in self.points):
            raise ShapeMismatch(f"Every point must have {self.n} coordinates.")

    def array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=np.int64).reshape(len(self.points), self.n)

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "points": [list(p) for p in self.points], "scale": self.scale}

    @classmethod
    def from_dict(cls, payload: Dict[str, Any], code: CssCode, *, source: Optional[str] = None) -> "Placement":
        try:
            n = int(payload["n"])
            points = tuple(tuple(int(c) for c in p) for p in payload["points"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad placement ({exc})", source=source, field="points") from exc
        return cls(code, points, n, float(payload.get("scale", 1.0)))


@dataclass(frozen=True)
class LocalityCertificate:
    injective: bool
    check_constant: int  # largest l1 distance between qubits sharing a check
    cube_constant: float  # largest l1 norm over size ** (1/n)
    n: int
    size: int
    collisions: int = 0
    flags: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.flags

    def describe(self) -> str:
        status = "ok" if self.ok else ",".join(self.flags)
        return (
            f"injective={self.injective} check_constant={self.check_constant} "
            f"cube_constant={self.cube_constant:.3f} [{status}]"
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "injective": self.injective,
            "check_constant": self.check_constant,
            "cube_constant": self.cube_constant,
            "n": self.n,
            "size": self.size,
            "collisions": self.collisions,
            "flags": list(self.flags),
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "LocalityCertificate":
        return cls(
            injective=bool(payload["injective"]),
            check_constant=int(payload["check_constant"]),
            cube_constant=float(payload["cube_constant"]),
            n=int(payload["n"]),
            size=int(payload["size"]),
            collisions=int(payload.get("collisions", 0)),
            flags=tuple(payload.get("flags", ())),
        )


def certify_local(
    code: CssCode,
    placement: Placement,
    *,
    check_limit: Optional[int] = None,
    cube_limit: float = CUBE_LIMIT,
) -> LocalityCertificate:
    """Exhaustive locality certificate; violations are recorded as flags."""
    points = placement.array()
    size = len(points)
    distinct = len(set(placement.points))
    injective = distinct == size
    check_constant = 0
    graph = check_graph(code)
    if graph.number_of_edges():
        edges = np.asarray(list(graph.edges), dtype=np.int64)
        check_constant = int(np.abs(points[edges[:, 0]] - points[edges[:, 1]]).sum(axis=1).max())
    cube_constant = 0.0
    if size:
        cube_constant = float(np.abs(points).sum(axis=1).max()) / size ** (1.0 / placement.n)
    flags = []
    if not injective:
        flags.append("not-injective")
    if check_limit is not None and check_constant > check_limit:
        flags.append("check-constant")
    if cube_constant > cube_limit:
        flags.append("cube-constant")
    certificate = LocalityCertificate(
        injective, check_constant, cube_constant, placement.n, size, size - distinct, tuple(flags)
    )
    LOGGER.debug("Locality certificate: %s", certificate.describe())
    return certificate


# ------------------------------------------------------------------ folding
def fold_point(point: Sequence[float], side: float) -> Tuple[float, ...]:
    """Fold each coordinate of the periodic box [0, side) in half about its centre."""
    return tuple(abs(float(c) - side / 2.0) for c in point)


def _fold_doubled(y: int, side: int) -> int:
    # doubled coordinate y in [0, 2L): twice the folded distance, odd below the fold line
    return 2 * abs(y - side) + (1 if y < side else 0)


def fold_torus(n: int, side: int, k: int = 1) -> Placement:
    """
    Injective placement of ``toric_code(n, side, k)``: each k-cell sits at its
    doubled barycenter, folded coordinatewise about the middle of the torus.
    """
    code = toric_code(n, side, k)
    corners = list(itertools.product(range(side), repeat=n))
    points = []
    for directions in itertools.combinations(range(n), k):
        for corner in corners:
            doubled = [2 * c + (1 if i in directions else 0) for i, c in enumerate(corner)]
            points.append(tuple(_fold_doubled(y, side) for y in doubled))
    return Placement(code, tuple(points), n)


# ----------------------------------------------------------------- snapping
def _offsets(n: int, epsilon: float, radius: float) -> np.ndarray:
    reach = int(math.floor(radius / epsilon))
    grid = np.asarray(list(itertools.product(range(-reach, reach + 1), repeat=n)), dtype=np.int64)
    lengths = np.linalg.norm(grid * epsilon, axis=1)
    keep = lengths <= radius + 1e-12
    grid, lengths = grid[keep], lengths[keep]
    order = np.lexsort(tuple(grid[:, i] for i in reversed(range(n))) + (lengths,))
    return grid[order]


def snap_to_lattice(points: Any, epsilon: float = DEFAULT_EPSILON, radius: float = SNAP_RADIUS) -> np.ndarray:
    """
    Give every point, in order, the nearest free point of the epsilon-lattice
    within ``radius``; returns integer lattice coordinates (units of epsilon).
    """
    array = np.asarray(points, dtype=float)
    n = array.shape[1]
    offsets = _offsets(n, epsilon, radius)
    occupied = set()
    out = np.zeros(array.shape, dtype=np.int64)
    for i, p in enumerate(array):
        base = np.rint(p / epsilon).astype(np.int64)
        candidates = base[None, :] + offsets
        distances = np.linalg.norm(candidates * epsilon - p[None, :], axis=1)
        for j in np.argsort(distances, kind="stable"):
            key = tuple(int(c) for c in candidates[j])
            if key not in occupied:
                occupied.add(key)
                out[i] = candidates[j]
                break
        else:
            raise LatticeExhausted(f"No free lattice point within {radius} of qubit {i} at spacing {epsilon}.")
    return out


def _lineage(fine: CellComplex, base: CellComplex) -> Lineage:
    try:
        return fine.lineage_to(base)
    except ValueError:
        # unsubdivided embeddings carry a copy of the base complex
        if fine.cells != base.cells or fine.boundary != base.boundary:
            raise
        return base.lineage_to(base)


def _cell_anchors(cell: Simplex, fine: CellComplex, lineage: Lineage) -> List[int]:
    """Fine vertices carried by ``cell`` closest to its barycenter; ties are all kept."""
    target = Fraction(1, len(cell))
    best: List[int] = []
    best_gap: Optional[Fraction] = None
    cell_set = set(cell)
    for v in range(fine.vertex_count):
        weights = lineage.weights(v)
        if not set(weights) <= cell_set:
            continue
        gap = max(abs(weights.get(u, Fraction(0)) - target) for u in cell)
        if best_gap is None or gap < best_gap:
            best, best_gap = [v], gap
        elif gap == best_gap:
            best.append(v)
    return best


def placement_from_embedding(
    code: CssCode,
    embedded: EmbeddedComplex,
    base: CellComplex,
    k: int,
    *,
    epsilon: float = DEFAULT_EPSILON,
) -> Placement:
    """
    Place the qubits of ``code_from_complex(base, k)`` at the image of each
    k-cell's barycenter, snapped to free points of the epsilon-lattice.
    """
    cells = base.simplices[k]
    if len(cells) != code.size:
        raise ShapeMismatch(f"Code has {code.size} qubits but the complex has {len(cells)} {k}-cells.")
    lineage = _lineage(embedded.complex, base)
    images = np.zeros((len(cells), embedded.params.n))
    for i, cell in enumerate(cells):
        images[i] = embedded.coords[_cell_anchors(cell, embedded.complex, lineage)].mean(axis=0)
    try:
        lattice = snap_to_lattice(images, epsilon)
    except LatticeExhausted:
        LOGGER.warning("Lattice spacing %.4f too coarse; retrying at %.4f", epsilon, epsilon / 2)
        epsilon /= 2.0
        lattice = snap_to_lattice(images, epsilon)
    if len(lattice):
        lattice = lattice - lattice.min(axis=0)
    points = tuple(tuple(int(c) for c in p) for p in lattice)
    if len(set(points)) != len(points):
        raise LatticeExhausted("Snapping produced a collision.")
    return Placement(code, points, embedded.params.n, epsilon)


# ------------------------------------------------------------------ padding
def serpentine(shape: Sequence[int]) -> Iterator[Point]:
    """Boustrophedon walk over a box; consecutive points are lattice neighbours."""
    if not shape:
        yield ()
        return
    for i in range(shape[0]):
        inner = list(serpentine(shape[1:]))
        for rest in (inner if i % 2 == 0 else reversed(inner)):
            yield (i,) + rest


def path_block(length: int) -> CssCode:
    """Qubits on the edges of a path, checks on its vertices: no logical qubits."""
    rows = tuple(tuple(e for e in (j - 1, j) if 0 <= e < length) for j in range(length + 1))
    return CssCode(BitMatrix(length + 1, length, rows), BitMatrix.zeros(0, length), name=f"path({length})")


def pad_code(
    code: CssCode,
    placement: Placement,
    target_volume: int,
    *,
    cube_factor: float = 2.0,
) -> Tuple[CssCode, Placement]:
    """
    Grow ``code`` to ``target_volume`` qubits with a path block laid along a
    serpentine in the slab of the cube beyond the existing points.
    """
    length = target_volume - code.size
    if length <= 0:
        return code, placement
    n = placement.n
    side = max(math.ceil(cube_factor * target_volume ** (1.0 / n)), 1)
    existing = placement.array()
    if len(existing):
        side = max(side, int(existing.max()) + 1)
        start = int(existing[:, 0].max()) + 1
    else:
        start = 0
    room = (side - start) * side ** (n - 1)
    if room < length:
        raise CubeTooSmall(f"Cube of side {side} leaves {max(room, 0)} free points for a pad of {length}.")
    walk = itertools.islice(serpentine((side - start,) + (side,) * (n - 1)), length)
    pad_points = tuple((p[0] + start,) + p[1:] for p in walk)
    padded = direct_sum(code, path_block(length))
    padded = CssCode(padded.h1, padded.h2, padded.qubit_labels, name=f"{code.name or 'code'}+pad({length})")
    LOGGER.info("Padded %s from %d to %d qubits in a cube of side %d", code.name, code.size, padded.size, side)
    return padded, Placement(padded, placement.points + pad_points, n, placement.scale)


def empty_code() -> CssCode:
    return CssCode(BitMatrix.zeros(0, 0), BitMatrix.zeros(0, 0), name="empty")


__all__ = [
    "LocalityCertificate",
    "Placement",
    "certify_local",
    "empty_code",
    "fold_point",
    "fold_torus",
    "pad_code",
    "path_block",
    "placement_from_embedding",
    "serpentine",
    "snap_to_lattice",
]
