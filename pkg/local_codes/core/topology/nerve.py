"""
Vertex-star covers, their partitions of unity and the nerve map.

All distances use the piecewise-linear metric in which every simplex is a
regular simplex with unit edges: two points of one simplex with barycentric
weights a and b are at distance sqrt(sum((a - b)**2) / 2).

The cover lives on the 4-fold edgewise subdivision of the base. The core of
set v is the fine vertices within 3/4 of v; the set itself is the open star
of its core, so it is an open union of fine cells.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np
from scipy import sparse

from ..primitives.errors import LocalCodesError, PointOutsideComplex
from .complex import CellComplex, Simplex
from .subdivision import _require_simplicial, edgewise_subdivide

LOGGER = logging.getLogger(__name__)

COVER_SUBDIVISION = 4
FINE_EDGE = 1.0 / COVER_SUBDIVISION
CORE_RADIUS = Fraction(3, 4)
RADIUS_BOUND = 2.0  # every set lies in a ball of this radius around its vertex
DEPTH = 1.0 / 8.0
# Sampled ell-1 Lipschitz ratio of the nerve map stays below this on every
# complex of dimension <= 2 we ship.
NERVE_LIPSCHITZ_BOUND = 48.0

Cell = Tuple[int, int]  # (dimension, index) of a fine cell
_ZERO = 1e-12


def simplex_distance(a: Dict[int, float], b: Dict[int, float]) -> float:
    """Unit-metric distance of two points given by barycentric weights on one simplex."""
    keys = set(a) | set(b)
    return math.sqrt(0.5 * sum((a.get(k, 0.0) - b.get(k, 0.0)) ** 2 for k in keys))


@dataclass(frozen=True)
class ComplexPoint:
    """A point of the realization: barycentric weights on a simplex of the base."""

    simplex: Simplex
    barycentric: Tuple[float, ...]

    @property
    def weights(self) -> Dict[int, float]:
        return {v: w for v, w in zip(self.simplex, self.barycentric) if w > 0}

    @property
    def carrier(self) -> Simplex:
        return tuple(sorted(self.weights))

    def to_dict(self) -> Dict[str, Any]:
        return {"simplex": list(self.simplex), "barycentric": list(self.barycentric)}


def make_point(x: CellComplex, simplex: Sequence[int], barycentric: Sequence[float], *, tol: float = 1e-9) -> ComplexPoint:
    key = tuple(int(v) for v in simplex)
    values = tuple(float(w) for w in barycentric)
    dim = len(key) - 1
    if (
        len(values) != len(key)
        or not 0 <= dim <= x.dims
        or key != tuple(sorted(key))
        or key not in x.simplex_index[dim]
    ):
        raise PointOutsideComplex(f"{key} is not a simplex of the complex.")
    if min(values) < -tol or abs(sum(values) - 1.0) > tol:
        raise PointOutsideComplex(f"Weights {values} are not barycentric.")
    clipped = np.clip(np.asarray(values), 0.0, None)
    return ComplexPoint(key, tuple(float(w) for w in clipped / clipped.sum()))


def vertex_point(v: int) -> ComplexPoint:
    return ComplexPoint((v,), (1.0,))


def random_point(x: CellComplex, rng: np.random.Generator) -> ComplexPoint:
    facet = x.facets[int(rng.integers(len(x.facets)))]
    weights = rng.dirichlet(np.ones(len(facet)))
    return ComplexPoint(facet, tuple(float(w) for w in weights))


@dataclass(frozen=True)
class NerveMapPoint:
    """Weights of a point on the cover sets, sorted by set index."""

    weights: Tuple[Tuple[int, float], ...]

    @property
    def support(self) -> Simplex:
        return tuple(i for i, w in self.weights if w > 0)

    def as_dict(self) -> Dict[int, float]:
        return dict(self.weights)

    def to_dense(self, size: int) -> np.ndarray:
        out = np.zeros(size)
        for i, w in self.weights:
            out[i] = w
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {"weights": [[i, w] for i, w in self.weights]}


@dataclass(frozen=True)
class Cover:
    base: CellComplex
    fine: CellComplex = field(repr=False)
    cores: Tuple[Tuple[int, ...], ...]  # fine vertices per set
    cell_membership: Tuple[Tuple[Tuple[int, ...], ...], ...] = field(repr=False)  # per dim, per fine cell
    heights: sparse.csr_matrix = field(repr=False, compare=False)  # fine vertex x set, graph distance to the set boundary
    margins: Dict[str, float] = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return len(self.cores)

    @cached_property
    def sets(self) -> Tuple[Tuple[Cell, ...], ...]:
        members: List[List[Cell]] = [[] for _ in range(self.size)]
        for k, level in enumerate(self.cell_membership):
            for j, owners in enumerate(level):
                for i in owners:
                    members[i].append((k, j))
        return tuple(tuple(cells) for cells in members)

    @cached_property
    def multiplicity(self) -> int:
        return max((len(owners) for level in self.cell_membership for owners in level), default=0)

    @cached_property
    def _fine_positions(self) -> Tuple[Dict[int, float], ...]:
        lineage = self.fine.lineage_to(self.base)
        return tuple({p: float(w) for p, w in lineage.weights(u).items()} for u in range(self.fine.vertex_count))

    @cached_property
    def _pieces_by_carrier(self) -> Dict[Simplex, List[Simplex]]:
        positions = self._fine_positions
        grouped: Dict[Simplex, List[Simplex]] = {}
        for k, level in enumerate(self.fine.simplices):
            for piece in level:
                carrier = tuple(sorted(set().union(*(positions[u].keys() for u in piece))))
                if len(carrier) == k + 1:
                    grouped.setdefault(carrier, []).append(piece)
        return grouped

    def locate(self, p: ComplexPoint) -> Tuple[Simplex, np.ndarray]:
        """Fine simplex containing ``p`` and the barycentric weights of ``p`` inside it."""
        target = p.weights
        carrier = tuple(sorted(target))
        pieces = self._pieces_by_carrier.get(carrier)
        if not pieces:
            raise PointOutsideComplex(f"No fine cells carried by {carrier}.")
        rhs = np.array([target[v] for v in carrier])
        best: Optional[Tuple[float, Simplex, np.ndarray]] = None
        for piece in pieces:
            matrix = np.array([[self._fine_positions[u].get(v, 0.0) for u in piece] for v in carrier])
            mu = np.linalg.solve(matrix, rhs)
            worst = float(mu.min())
            if best is None or worst > best[0]:
                best = (worst, piece, mu)
            if worst >= -1e-9:
                break
        _, piece, mu = best
        mu = np.where(mu > _ZERO, mu, 0.0)
        return piece, mu / mu.sum()

    def containing(self, p: ComplexPoint) -> Tuple[int, ...]:
        """Sets whose open cells contain ``p``."""
        piece, mu = self.locate(p)
        face = tuple(u for u, w in zip(piece, mu) if w > 0)
        return self.cell_membership[len(face) - 1][self.fine.simplex_index[len(face) - 1][face]]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sets": [[list(cell) for cell in cells] for cells in self.sets],
            "margins": dict(self.margins),
            "multiplicity": self.multiplicity,
            "subdivision": COVER_SUBDIVISION,
        }


def _core_distance_ok(weights: Dict[int, Fraction], v: int) -> bool:
    # 2 * dist^2 = (1 - w_v)^2 + sum of the other squared weights
    total = (1 - weights.get(v, Fraction(0))) ** 2 + sum(w * w for p, w in weights.items() if p != v)
    return total < 2 * CORE_RADIUS * CORE_RADIUS


def star_cover(x: CellComplex) -> Cover:
    """One open set per vertex of ``x``: the fine cells touching the 3/4-core of its star."""
    _require_simplicial(x, "star_cover")
    x.coords_array()  # raises NoCoordinates
    fine = edgewise_subdivide(x, COVER_SUBDIVISION)
    lineage = fine.lineage_to(x)

    cores: List[List[int]] = [[] for _ in range(x.vertex_count)]
    owners: List[List[int]] = [[] for _ in range(fine.vertex_count)]
    for u in range(fine.vertex_count):
        weights = lineage.weights(u)
        for v in sorted(weights):
            if _core_distance_ok(weights, v):
                cores[v].append(u)
                owners[u].append(v)

    graph = fine.edge_graph()
    rows, cols, data = [], [], []
    for i, core in enumerate(cores):
        inside = set(core)
        rim = {b for u in core for b in graph.neighbors(u) if b not in inside}
        if rim:
            lengths = nx.multi_source_dijkstra_path_length(
                graph.subgraph(inside | rim), rim, weight=lambda a, b, attrs: FINE_EDGE
            )
        else:
            lengths = {u: 1.0 for u in inside}
        for u in core:
            rows.append(u)
            cols.append(i)
            data.append(float(lengths[u]))
    heights = sparse.csr_matrix((data, (rows, cols)), shape=(fine.vertex_count, x.vertex_count))

    membership = tuple(
        tuple(tuple(sorted(set().union(*(owners[u] for u in cell)))) for cell in level) for level in fine.simplices
    )

    positions = [{p: float(w) for p, w in lineage.weights(u).items()} for u in range(fine.vertex_count)]
    measured_radius = 0.0
    for level in fine.simplices:
        for cell in level:
            for i in set().union(*(owners[u] for u in cell)):
                for u in cell:
                    measured_radius = max(measured_radius, simplex_distance(positions[u], {i: 1.0}))
    measured_depth = float(heights.max(axis=1).toarray().min()) if fine.vertex_count else 0.0

    margins = {
        "radius_bound": RADIUS_BOUND,
        "depth": DEPTH,
        "core_radius": float(CORE_RADIUS),
        "measured_radius": measured_radius,
        "measured_depth": measured_depth,
        "distance_error": FINE_EDGE,
    }
    cover = Cover(x, fine, tuple(tuple(c) for c in cores), membership, heights, margins)
    LOGGER.info(
        "\n%s\n[STAR COVER]\nSets: %d\nFine cells: %d\nMultiplicity: %d\nMeasured radius: %.3f\n%s",
        "=" * 80,
        cover.size,
        sum(fine.cells),
        cover.multiplicity,
        measured_radius,
        "=" * 80,
    )
    return cover


def partition_of_unity(cover: Cover, p: ComplexPoint) -> NerveMapPoint:
    """
    psi_i(p) = h_i(p) / sum_k h_k(p), where h_i interpolates, linearly on
    each fine cell, the graph distance of the fine vertices to the boundary
    of set i. h_i vanishes outside set i and is positive inside it.
    """
    piece, mu = cover.locate(p)
    raw = mu @ cover.heights[list(piece)].toarray()
    total = float(raw.sum())
    if total <= 0:
        raise PointOutsideComplex(f"Point {p.to_dict()} is not covered.")
    return NerveMapPoint(tuple((int(i), float(raw[i] / total)) for i in np.flatnonzero(raw > 0)))


def nerve_complex(cover: Cover) -> CellComplex:
    """Intersection nerve: a simplex for every family of sets sharing a fine cell."""
    facets = {owners for level in cover.cell_membership for owners in level if owners}
    return CellComplex.from_simplices(sorted(facets))


def nerve_map(cover: Cover, p: ComplexPoint, nerve: Optional[CellComplex] = None) -> NerveMapPoint:
    """rho(p); its support is checked to be a simplex of the nerve."""
    point = partition_of_unity(cover, p)
    nerve = nerve or nerve_complex(cover)
    support = point.support
    if support not in nerve.simplex_index[len(support) - 1]:
        raise LocalCodesError(f"Support {support} of the nerve map is not a nerve simplex.")
    return point


def nerve_vertex_map(cover: Cover, *, fine: bool = False) -> Tuple[int, ...]:
    """
    Simplicial approximation of the nerve map: every vertex goes to the set
    of largest weight, lowest index on ties. ``fine=True`` maps the vertices
    of the fine subdivision instead of the base.
    """
    if fine:
        heights = cover.heights.toarray()
        return tuple(int(np.argmax(row)) for row in heights)
    out = []
    for v in range(cover.base.vertex_count):
        weights = partition_of_unity(cover, vertex_point(v)).as_dict()
        best = max(weights.values())
        out.append(min(i for i, w in weights.items() if w == best))
    return tuple(out)


def unhit_nerve_simplices(cover: Cover, points: Iterable[ComplexPoint]) -> List[Simplex]:
    """Nerve simplices that are not faces of any sampled support."""
    nerve = nerve_complex(cover)
    hit: Set[Simplex] = set()
    for p in points:
        hit.update(_faces(partition_of_unity(cover, p).support))
    return [s for level in nerve.simplices for s in level if s not in hit]


def _faces(simplex: Simplex) -> Set[Simplex]:
    faces: Set[Simplex] = set()
    n = len(simplex)
    for mask in range(1, 1 << n):
        faces.add(tuple(simplex[i] for i in range(n) if mask >> i & 1))
    return faces


@dataclass(frozen=True)
class LipschitzEstimate:
    pairs: int
    ratio: float  # largest |rho(p) - rho(q)|_1 / dist(p, q) seen
    bound: float = NERVE_LIPSCHITZ_BOUND

    @property
    def within_bound(self) -> bool:
        return self.ratio <= self.bound

    def to_dict(self) -> Dict[str, Any]:
        return {"pairs": self.pairs, "ratio": self.ratio, "bound": self.bound, "within_bound": self.within_bound}


def lipschitz_estimate(cover: Cover, *, pairs: int = 10_000, step: float = 0.05, seed: int = 0) -> LipschitzEstimate:
    """Sample nearby pairs inside random facets and record the worst ell-1 ratio."""
    rng = np.random.default_rng(seed)
    base = cover.base
    facets = [f for f in base.facets if len(f) > 1]
    worst = 0.0
    done = 0
    while done < pairs and facets:
        facet = facets[int(rng.integers(len(facets)))]
        a = rng.dirichlet(np.ones(len(facet)))
        direction = rng.normal(size=len(facet))
        direction -= direction.mean()
        norm = math.sqrt(0.5 * float(direction @ direction))
        if norm == 0:
            continue
        b = a + direction / norm * rng.uniform(1e-4, step)
        if b.min() < 0:
            continue
        p = ComplexPoint(facet, tuple(float(w) for w in a))
        q = ComplexPoint(facet, tuple(float(w) for w in b))
        distance = simplex_distance(dict(zip(facet, a)), dict(zip(facet, b)))
        rho_p = partition_of_unity(cover, p).to_dense(cover.size)
        rho_q = partition_of_unity(cover, q).to_dense(cover.size)
        worst = max(worst, float(np.abs(rho_p - rho_q).sum()) / distance)
        done += 1
    LOGGER.debug("Nerve map Lipschitz estimate %.3f over %d pairs.", worst, done)
    return LipschitzEstimate(done, worst)


__all__ = [
    "COVER_SUBDIVISION",
    "ComplexPoint",
    "Cover",
    "LipschitzEstimate",
    "NERVE_LIPSCHITZ_BOUND",
    "NerveMapPoint",
    "lipschitz_estimate",
    "make_point",
    "nerve_complex",
    "nerve_map",
    "nerve_vertex_map",
    "partition_of_unity",
    "random_point",
    "simplex_distance",
    "star_cover",
    "unhit_nerve_simplices",
    "vertex_point",
]
