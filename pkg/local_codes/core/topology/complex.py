"""
Cell complexes graded by dimension, with mod-2 boundary operators.

``boundary[k]`` has shape ``cells[k-1] x cells[k]`` (``boundary[0]`` is the
empty ``0 x cells[0]`` matrix). Simplicial and cubical complexes share the
representation; both record the vertex set of every cell.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy import sparse

from ..primitives.errors import DimensionOutOfRange, FormatError, NoCoordinates, NotSimplicial, ShapeMismatch
from ..primitives.f2 import (
    BitMatrix,
    BitVector,
    CosetSearchResult,
    SearchBudget,
    encode_weight,
    min_coset_weight,
    nullspace_basis,
    rank,
)

LOGGER = logging.getLogger(__name__)

Simplex = Tuple[int, ...]


class CellKind(str, Enum):
    SIMPLICIAL = "simplicial"
    CUBICAL = "cubical"


@dataclass(frozen=True)
class Lineage:
    """
    Exact position of every vertex of a subdivision inside its parent complex.

    ``numerators[v]`` lists ``(parent vertex, a)`` pairs; the barycentric
    weight is ``a / denominator`` and the pairs of one vertex sum to the
    denominator.
    """

    parent: "CellComplex"
    numerators: Tuple[Tuple[Tuple[int, int], ...], ...]
    denominator: int
    method: str

    def weights(self, vertex: int) -> Dict[int, Fraction]:
        return {p: Fraction(a, self.denominator) for p, a in self.numerators[vertex]}

    def carrier(self, vertex: int) -> Simplex:
        return tuple(p for p, _ in self.numerators[vertex])

    def to_sparse(self) -> sparse.csr_matrix:
        rows, cols, data = [], [], []
        for v, entries in enumerate(self.numerators):
            for p, a in entries:
                rows.append(v)
                cols.append(p)
                data.append(a / self.denominator)
        shape = (len(self.numerators), self.parent.vertex_count)
        return sparse.csr_matrix((data, (rows, cols)), shape=shape)

    def compose(self, inner: "Lineage") -> "Lineage":
        """Express this lineage relative to ``inner.parent`` (``self.parent`` must be the child of ``inner``)."""
        numerators = []
        for entries in self.numerators:
            total: Dict[int, int] = {}
            for p, a in entries:
                for q, b in inner.numerators[p]:
                    total[q] = total.get(q, 0) + a * b
            numerators.append(tuple(sorted(total.items())))
        return Lineage(inner.parent, tuple(numerators), self.denominator * inner.denominator, f"{self.method}+{inner.method}")


@dataclass(frozen=True)
class CellComplex:
    dims: int
    cells: Tuple[int, ...]
    boundary: Tuple[BitMatrix, ...]
    kind: CellKind = CellKind.SIMPLICIAL
    cell_vertices: Optional[Tuple[Tuple[Simplex, ...], ...]] = None
    vertex_coords: Optional[Tuple[Tuple[float, ...], ...]] = None
    lineage: Optional[Lineage] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.cells) != self.dims + 1 or len(self.boundary) != self.dims + 1:
            raise ShapeMismatch(f"Complex of dimension {self.dims} needs {self.dims + 1} cell counts and boundaries.")
        for k, matrix in enumerate(self.boundary):
            expected = (self.cells[k - 1] if k else 0, self.cells[k])
            if matrix.shape != expected:
                raise ShapeMismatch(f"boundary[{k}] has shape {matrix.shape}, expected {expected}.")
        if self.vertex_coords is not None and len(self.vertex_coords) != self.cells[0]:
            raise ShapeMismatch("vertex_coords must list one point per vertex.")

    # ---------------------------------------------------------------- queries
    @property
    def vertex_count(self) -> int:
        return self.cells[0]

    @property
    def vol(self) -> int:
        return self.cells[self.dims]

    @property
    def is_simplicial(self) -> bool:
        return self.kind == CellKind.SIMPLICIAL

    @property
    def simplices(self) -> Tuple[Tuple[Simplex, ...], ...]:
        if self.cell_vertices is None:
            raise NotSimplicial("Complex carries no vertex sets for its cells.")
        return self.cell_vertices

    @cached_property
    def simplex_index(self) -> Tuple[Dict[Simplex, int], ...]:
        return tuple({s: i for i, s in enumerate(level)} for level in self.simplices)

    @cached_property
    def facets(self) -> Tuple[Simplex, ...]:
        """Maximal cells (by vertex set), in dimension then index order."""
        covered = set()
        for k in range(1, self.dims + 1):
            for column in self.boundary[k].transpose().row_support:
                for face in column:
                    covered.add((k - 1, face))
        return tuple(
            self.simplices[k][i]
            for k in range(self.dims + 1)
            for i in range(self.cells[k])
            if (k, i) not in covered
        )

    @cached_property
    def degree(self) -> int:
        """Maximum number of positive-dimensional cells containing a vertex."""
        counts = np.zeros(self.vertex_count, dtype=np.int64)
        for k in range(1, self.dims + 1):
            for cell in self.simplices[k]:
                counts[list(cell)] += 1
        return int(counts.max(initial=0))

    @cached_property
    def max_vertex_degree(self) -> int:
        graph = self.edge_graph()
        return max((d for _, d in graph.degree()), default=0)

    def coords_array(self) -> np.ndarray:
        if self.vertex_coords is None:
            raise NoCoordinates("Complex has no vertex coordinates.")
        return np.asarray(self.vertex_coords, dtype=float)

    def edge_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        if self.dims >= 1:
            for column in self.boundary[1].transpose().row_support:
                if len(column) == 2:
                    graph.add_edge(*column)
        return graph

    def coboundary(self, k: int) -> BitMatrix:
        """δ^k : C^k → C^{k+1}, i.e. boundary[k+1] transposed (empty at the top)."""
        if k >= self.dims:
            return BitMatrix.zeros(0, self.cells[k])
        return self.boundary[k + 1].transpose()

    def betti(self, k: int) -> int:
        if not 0 <= k <= self.dims:
            raise DimensionOutOfRange(f"k={k} outside [0, {self.dims}].")
        upper = rank(self.boundary[k + 1]) if k < self.dims else 0
        return self.cells[k] - rank(self.boundary[k]) - upper

    def betti_numbers(self) -> Tuple[int, ...]:
        return tuple(self.betti(k) for k in range(self.dims + 1))

    def chain(self, k: int, support: Iterable[int] = ()) -> "ChainVector":
        return ChainVector(k, BitVector(self.cells[k], tuple(sorted(set(support)))))

    def chain_condition_holds(self) -> bool:
        return all((self.boundary[k - 1] @ self.boundary[k]).is_zero() for k in range(2, self.dims + 1))

    def with_coords(self, coords: Any) -> "CellComplex":
        points = tuple(tuple(float(c) for c in row) for row in np.asarray(coords, dtype=float))
        return CellComplex(self.dims, self.cells, self.boundary, self.kind, self.cell_vertices, points, self.lineage)

    def lineage_to(self, ancestor: "CellComplex") -> Lineage:
        """Compose lineages down to ``ancestor``; identity when ``ancestor is self``."""
        if ancestor is self:
            return Lineage(self, tuple(((v, 1),) for v in range(self.vertex_count)), 1, "identity")
        chain = self.lineage
        if chain is None:
            raise ValueError("Complex is not a subdivision of the requested ancestor.")
        while chain.parent is not ancestor:
            if chain.parent.lineage is None:
                raise ValueError("Complex is not a subdivision of the requested ancestor.")
            chain = chain.compose(chain.parent.lineage)
        return chain

    # ------------------------------------------------------------ interchange
    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "dims": self.dims,
            "cells": list(self.cells),
            "boundary": [m.to_dict() for m in self.boundary],
            "kind": self.kind.value,
        }
        if self.cell_vertices is not None:
            payload["cell_vertices"] = [[list(c) for c in level] for level in self.cell_vertices]
        if self.vertex_coords is not None:
            payload["coords"] = [list(p) for p in self.vertex_coords]
        return payload

    @classmethod
    def from_dict(cls, payload: Dict[str, Any], *, source: Optional[str] = None) -> "CellComplex":
        try:
            boundary = tuple(BitMatrix.from_dict(m, source=source) for m in payload["boundary"])
            cell_vertices = payload.get("cell_vertices")
            coords = payload.get("coords")
            return cls(
                dims=int(payload["dims"]),
                cells=tuple(int(c) for c in payload["cells"]),
                boundary=boundary,
                kind=CellKind(payload.get("kind", CellKind.SIMPLICIAL.value)),
                cell_vertices=tuple(tuple(tuple(c) for c in level) for level in cell_vertices)
                if cell_vertices is not None
                else None,
                vertex_coords=tuple(tuple(float(x) for x in p) for p in coords) if coords is not None else None,
            )
        except KeyError as exc:
            raise FormatError("missing key", source=source, field=str(exc.args[0])) from exc
        except ShapeMismatch as exc:
            raise FormatError(str(exc), source=source, field="boundary") from exc

    # ----------------------------------------------------------- constructors
    @classmethod
    def from_simplices(
        cls,
        facets: Iterable[Sequence[int]],
        *,
        coords: Any = None,
        lineage: Optional[Lineage] = None,
    ) -> "CellComplex":
        """Smallest simplicial complex containing ``facets``; vertices must be 0..V-1."""
        levels: Dict[int, set] = {}
        for facet in facets:
            simplex = tuple(sorted(set(int(v) for v in facet)))
            if not simplex:
                continue
            for size in range(1, len(simplex) + 1):
                bucket = levels.setdefault(size - 1, set())
                if size == len(simplex):
                    bucket.add(simplex)
                else:
                    bucket.update(itertools.combinations(simplex, size))
        if not levels:
            raise ValueError("A complex needs at least one simplex.")
        dims = max(levels)
        ordered = tuple(tuple(sorted(levels.get(k, ()))) for k in range(dims + 1))
        vertices = [s[0] for s in ordered[0]]
        if vertices != list(range(len(vertices))):
            raise ValueError("Vertices must be labelled 0..V-1.")
        boundary = [BitMatrix.zeros(0, len(ordered[0]))]
        for k in range(1, dims + 1):
            index = {s: i for i, s in enumerate(ordered[k - 1])}
            columns = tuple(
                tuple(sorted(index[simplex[:j] + simplex[j + 1 :]] for j in range(k + 1))) for simplex in ordered[k]
            )
            boundary.append(BitMatrix(len(ordered[k]), len(ordered[k - 1]), columns).transpose())
        points = None
        if coords is not None:
            points = tuple(tuple(float(c) for c in row) for row in np.asarray(coords, dtype=float))
        return cls(
            dims,
            tuple(len(level) for level in ordered),
            tuple(boundary),
            CellKind.SIMPLICIAL,
            ordered,
            points,
            lineage,
        )


@dataclass(frozen=True)
class ChainVector:
    """A mod-2 chain (or cochain) of dimension ``dim``."""

    dim: int
    vector: BitVector

    @property
    def vol(self) -> int:
        return self.vector.weight

    @property
    def support(self) -> Tuple[int, ...]:
        return self.vector.support

    def to_dict(self) -> Dict[str, Any]:
        return {"dim": self.dim, "vector": self.vector.to_dict()}


@dataclass(frozen=True)
class SystoleResult:
    """
    Minimum volume of a nontrivial (co)cycle. A trivial group is reported as
    infinity, with ``value`` falling back to the conventional 0.
    """

    k: int
    kind: str  # systole | cosystole
    search: CosetSearchResult

    @property
    def weight(self) -> float:
        return self.search.weight

    @property
    def trivial(self) -> bool:
        return self.search.is_trivial

    @property
    def value(self) -> int:
        return 0 if self.trivial else int(self.search.weight)

    @property
    def exact(self) -> bool:
        return self.search.exact

    @property
    def witness(self) -> Optional[ChainVector]:
        if self.search.witness is None:
            return None
        return ChainVector(self.k, self.search.witness)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "kind": self.kind,
            "weight": encode_weight(self.weight),
            "trivial": self.trivial,
            "value": self.value,
            "search": self.search.to_dict(),
        }


def systole(x: CellComplex, k: int, budget: Optional[SearchBudget] = None) -> SystoleResult:
    """Smallest k-cycle that is not a boundary."""
    if not 0 <= k <= x.dims:
        raise DimensionOutOfRange(f"k={k} outside [0, {x.dims}].")
    kernel = nullspace_basis(x.boundary[k])
    image = x.coboundary(k).rows_as_vectors()
    search = min_coset_weight(kernel, image, budget, check_matrix=x.boundary[k], length=x.cells[k])
    return SystoleResult(k, "systole", search)


def cosystole(x: CellComplex, k: int, budget: Optional[SearchBudget] = None) -> SystoleResult:
    """Smallest k-cocycle that is not a coboundary."""
    if not 0 <= k <= x.dims:
        raise DimensionOutOfRange(f"k={k} outside [0, {x.dims}].")
    delta = x.coboundary(k)
    kernel = nullspace_basis(delta)
    image = x.boundary[k].rows_as_vectors()
    search = min_coset_weight(kernel, image, budget, check_matrix=delta, length=x.cells[k])
    return SystoleResult(k, "cosystole", search)


def is_closed_manifold(x: CellComplex) -> bool:
    """
    Combinatorial check: pure, every (d-1)-cell in exactly two d-cells and,
    for simplicial complexes of dimension >= 2, connected vertex links.
    """
    d = x.dims
    if d < 1:
        return False
    if any(len(row) != 2 for row in x.boundary[d].row_support):
        return False
    if len(x.facets) != x.cells[d]:
        return False
    if x.is_simplicial and d >= 2:
        links: Dict[int, nx.Graph] = {v: nx.Graph() for v in range(x.vertex_count)}
        for simplex in x.simplices[d]:
            for v in simplex:
                rest = [u for u in simplex if u != v]
                links[v].add_nodes_from(rest)
                links[v].add_edges_from(itertools.combinations(rest, 2))
        if not all(graph.number_of_nodes() and nx.is_connected(graph) for graph in links.values()):
            return False
    return True


# ------------------------------------------------------------------ families
def _circle_coords(count: int) -> np.ndarray:
    radius = 1.0 / (2.0 * math.sin(math.pi / count))
    angles = 2.0 * math.pi * np.arange(count) / count
    return np.column_stack([radius * np.cos(angles), radius * np.sin(angles)])


def simplex(d: int) -> CellComplex:
    """A single closed d-simplex with unit edges."""
    if d < 0:
        raise DimensionOutOfRange("Simplex dimension must be nonnegative.")
    vertices = np.eye(d + 1) / math.sqrt(2.0)
    return CellComplex.from_simplices([tuple(range(d + 1))], coords=vertices)


def cycle(count: int) -> CellComplex:
    """Cycle graph on ``count >= 3`` vertices with unit edges on a circle."""
    if count < 3:
        raise ValueError("A simplicial cycle needs at least 3 vertices.")
    return CellComplex.from_simplices(
        [(i, (i + 1) % count) for i in range(count)],
        coords=_circle_coords(count),
    )


def triangle_boundary() -> CellComplex:
    return cycle(3)


def wedge_of_circles() -> CellComplex:
    """Two triangle boundaries glued at vertex 0."""
    coords = np.array([[0.0, 0.0], [1.0, 0.5], [1.0, -0.5], [-1.0, 0.5], [-1.0, -0.5]])
    edges = [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]
    return CellComplex.from_simplices(edges, coords=coords)


def octahedron() -> CellComplex:
    """Boundary of the octahedron, a triangulated 2-sphere."""
    coords = np.vstack([np.eye(3), -np.eye(3)]) / math.sqrt(2.0)
    faces = [(a, b, c) for a in (0, 3) for b in (1, 4) for c in (2, 5)]
    return CellComplex.from_simplices(faces, coords=coords)


def triangulated_torus(side: int) -> CellComplex:
    """The side x side grid torus with one diagonal per square."""
    if side < 3:
        raise ValueError("The triangulated torus needs side >= 3 to be simplicial.")

    def vid(i: int, j: int) -> int:
        return (i % side) * side + (j % side)

    faces = []
    for i in range(side):
        for j in range(side):
            faces.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)))
            faces.append((vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)))
    return CellComplex.from_simplices(faces)


def cubical_torus(n: int, side: int) -> CellComplex:
    """
    The side-periodic cubical n-torus. A k-cell is (directions S, corner x),
    |S| = k, ordered lexicographically by (S, x).
    """
    if n < 1 or side < 2:
        raise ValueError("cubical_torus needs n >= 1 and side >= 2.")
    corners = list(itertools.product(range(side), repeat=n))
    corner_index = {x: i for i, x in enumerate(corners)}

    def shift(x: Tuple[int, ...], directions: Iterable[int]) -> Tuple[int, ...]:
        y = list(x)
        for i in directions:
            y[i] = (y[i] + 1) % side
        return tuple(y)

    levels: List[List[Tuple[Tuple[int, ...], Tuple[int, ...]]]] = []
    for k in range(n + 1):
        levels.append([(s, x) for s in itertools.combinations(range(n), k) for x in corners])
    index = [{cell: i for i, cell in enumerate(level)} for level in levels]

    boundary = [BitMatrix.zeros(0, len(corners))]
    for k in range(1, n + 1):
        columns = []
        for s, x in levels[k]:
            faces = []
            for i in s:
                rest = tuple(d for d in s if d != i)
                faces.append(index[k - 1][(rest, x)])
                faces.append(index[k - 1][(rest, shift(x, [i]))])
            columns.append(tuple(sorted(faces)))
        boundary.append(BitMatrix(len(levels[k]), len(levels[k - 1]), tuple(columns)).transpose())

    cell_vertices = tuple(
        tuple(
            tuple(sorted({corner_index[shift(x, t)] for r in range(len(s) + 1) for t in itertools.combinations(s, r)}))
            for s, x in level
        )
        for level in levels
    )
    return CellComplex(n, tuple(len(level) for level in levels), tuple(boundary), CellKind.CUBICAL, cell_vertices)


def _grow_surface(triangles: int, max_degree: int, rng: np.random.Generator) -> Optional[List[Simplex]]:
    """One growth attempt; None on a dead end."""
    faces: List[Simplex] = [(0, 1, 2)]
    adjacency: Dict[int, set] = {0: {1, 2}, 1: {0, 2}, 2: {0, 1}}
    edge_use: Dict[Tuple[int, int], int] = {(0, 1): 1, (0, 2): 1, (1, 2): 1}
    face_set = {faces[0]}

    def fits(face: Simplex) -> bool:
        if len(set(face)) < 3 or tuple(sorted(face)) in face_set:
            return False
        for a, b in itertools.combinations(sorted(face), 2):
            if b in adjacency[a]:
                if edge_use[(a, b)] >= 2:
                    return False
            elif len(adjacency[a]) >= max_degree or len(adjacency[b]) >= max_degree:
                return False
        return True

    while len(faces) < triangles:
        # a saturated boundary vertex is closed over; its interior degree is then max_degree
        ears = [
            (u, v, w)
            for u in sorted(adjacency)
            if len(adjacency[u]) >= max_degree
            for v, w in itertools.combinations(sorted(b for b in adjacency[u] if edge_use[tuple(sorted((u, b)))] < 2), 2)
            if fits((u, v, w))
        ]
        if ears:
            face = ears[int(rng.integers(len(ears)))]
        else:
            growable = [
                e for e, used in sorted(edge_use.items())
                if used < 2 and len(adjacency[e[0]]) < max_degree and len(adjacency[e[1]]) < max_degree
            ]
            if not growable:
                return None
            u, v = growable[int(rng.integers(len(growable)))]
            w = len(adjacency)
            adjacency[w] = set()
            face = (u, v, w)
        face = tuple(sorted(face))
        face_set.add(face)
        faces.append(face)
        for a, b in itertools.combinations(face, 2):
            adjacency[a].add(b)
            adjacency[b].add(a)
            edge_use[(a, b)] = edge_use.get((a, b), 0) + 1
    return faces


def random_surface_complex(
    triangles: int, *, max_vertex_degree: int = 6, seed: int = 0, attempts: int = 32
) -> CellComplex:
    """
    Random connected 2-complex grown triangle by triangle, every vertex of
    the 1-skeleton keeping degree <= ``max_vertex_degree`` and every edge in
    at most two triangles. New triangles hang a fresh vertex off a boundary
    edge; saturated boundary vertices are closed over. A dead end restarts
    the growth from a fresh stream derived from ``seed``.
    """
    if triangles < 1:
        raise ValueError("Need at least one triangle.")
    if max_vertex_degree < 3:
        raise ValueError("max_vertex_degree must be at least 3.")
    for attempt in range(attempts):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(attempt,)))
        faces = _grow_surface(triangles, max_vertex_degree, rng)
        if faces is not None:
            return CellComplex.from_simplices(faces)
        LOGGER.debug("Surface growth attempt %d hit a dead end", attempt)
    raise ValueError(f"Degree bound {max_vertex_degree} too tight for {triangles} triangles after {attempts} attempts.")


__all__ = [
    "CellComplex",
    "CellKind",
    "ChainVector",
    "Lineage",
    "Simplex",
    "SystoleResult",
    "cosystole",
    "cubical_torus",
    "cycle",
    "is_closed_manifold",
    "octahedron",
    "random_surface_complex",
    "simplex",
    "systole",
    "triangle_boundary",
    "triangulated_torus",
    "wedge_of_circles",
]
