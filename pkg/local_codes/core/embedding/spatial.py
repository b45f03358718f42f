"""
Unit-cell spatial hash and coarse-map certificates.

A simplex image *meets* the half-open unit cell ``c`` when it contains a point
``p`` with ``floor(p) == c``. Meets are computed exactly: vertices by flooring,
segments by sweeping the parameters where they cross integer planes, triangles
by clipping against unit slabs one axis at a time, larger simplices by a
strict feasibility program over barycentric weights.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from ..primitives.errors import CompositionBoundViolated, ShapeMismatch
from ..topology.complex import CellComplex, Simplex

LOGGER = logging.getLogger(__name__)

# crossing points this close to an integer plane are put on it
SNAP = 1e-9


@dataclass(frozen=True)
class UnitGrid:
    cell: float = 1.0

    def to_dict(self) -> Dict[str, Any]:
        return {"cell": self.cell}

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "UnitGrid":
        return cls(float(payload.get("cell", 1.0)))


def _segment_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(segment index, cell...) rows for segments ``a[i] -> b[i]``, with repeats."""
    count, n = a.shape
    step = b - a
    owners = [np.arange(count), np.arange(count)]
    params = [np.zeros(count), np.ones(count)]
    for axis in range(n):
        low = np.ceil(np.minimum(a[:, axis], b[:, axis]))
        high = np.floor(np.maximum(a[:, axis], b[:, axis]))
        crossings = np.where(step[:, axis] != 0, high - low + 1, 0).clip(min=0).astype(np.int64)
        total = int(crossings.sum())
        if total == 0:
            continue
        owner = np.repeat(np.arange(count), crossings)
        start = np.repeat(np.cumsum(crossings) - crossings, crossings)
        plane = low[owner] + (np.arange(total) - start)
        owners.append(owner)
        params.append((plane - a[owner, axis]) / step[owner, axis])
    owner = np.concatenate(owners)
    t = np.concatenate(params).clip(0.0, 1.0)
    order = np.lexsort((t, owner))
    owner, t = owner[order], t[order]

    points = (1.0 - t)[:, None] * a[owner] + t[:, None] * b[owner]
    inner = (t > 0.0) & (t < 1.0)
    nearest = np.round(points)
    snap = inner[:, None] & (np.abs(points - nearest) <= SNAP * np.maximum(1.0, np.abs(points)))
    points = np.where(snap, nearest, points)

    # between consecutive breakpoints every coordinate keeps its floor
    same = owner[1:] == owner[:-1]
    middle = (t[1:][same] + t[:-1][same]) / 2.0
    between = owner[1:][same]
    middles = (1.0 - middle)[:, None] * a[between] + middle[:, None] * b[between]
    cells = np.floor(np.concatenate([points, middles])).astype(np.int64)
    return np.column_stack([np.concatenate([owner, between]), cells])


def _clip(polygon: np.ndarray, axis: int, value: float, keep_above: bool) -> np.ndarray:
    """Sutherland-Hodgman step against ``x[axis] >= value`` (or ``<=``)."""
    x = polygon[:, axis]
    inside = x >= value if keep_above else x <= value
    if inside.all():
        return polygon
    if not inside.any():
        return polygon[:0]
    out: List[np.ndarray] = []
    for j in range(len(polygon)):
        if inside[j] != inside[j - 1]:
            # parametrized from the inside end
            p, q = (polygon[j - 1], polygon[j]) if inside[j - 1] else (polygon[j], polygon[j - 1])
            t = (value - p[axis]) / (q[axis] - p[axis])
            crossing = (1.0 - t) * p + t * q
            crossing[axis] = value
            out.append(crossing)
        if inside[j]:
            out.append(polygon[j])
    clipped = np.asarray(out)
    keep = np.any(clipped != np.roll(clipped, 1, axis=0), axis=1)
    return clipped[keep] if keep.any() else clipped[:1]


def _polygon_cells(polygon: np.ndarray) -> List[Tuple[int, ...]]:
    """Cells met by a convex polygon given as a cyclic vertex list."""
    n = polygon.shape[1]
    found: List[Tuple[int, ...]] = []

    def descend(piece: np.ndarray, axis: int, prefix: Tuple[int, ...]) -> None:
        if axis == n:
            # the closed piece must not lie wholly on an upper face of the cell
            upper = np.asarray(prefix, dtype=float) + 1.0
            if not np.all(piece == upper, axis=0).any():
                found.append(prefix)
            return
        for c in range(math.floor(piece[:, axis].min()), math.floor(piece[:, axis].max()) + 1):
            slab = _clip(_clip(piece, axis, float(c), True), axis, float(c + 1), False)
            if len(slab):
                descend(slab, axis + 1, prefix + (c,))

    descend(polygon, 0, ())
    return found


def _feasible_cells(points: np.ndarray) -> List[Tuple[int, ...]]:
    """Cells met by the convex hull of ``points``: maximize the slack below every upper face."""
    k, n = points.shape
    lows = np.floor(points.min(axis=0)).astype(np.int64)
    highs = np.floor(points.max(axis=0)).astype(np.int64)
    upper = np.hstack([points.T, np.ones((n, 1))])
    lower = np.hstack([-points.T, np.zeros((n, 1))])
    objective = np.zeros(k + 1)
    objective[-1] = -1.0
    equality = np.append(np.ones(k), 0.0)[None, :]
    found: List[Tuple[int, ...]] = []
    for cell in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs))):
        c = np.asarray(cell, dtype=float)
        result = linprog(
            objective,
            A_ub=np.vstack([upper, lower]),
            b_ub=np.concatenate([c + 1.0, -c]),
            A_eq=equality,
            b_eq=[1.0],
            bounds=[(0.0, None)] * k + [(0.0, 1.0)],
            method="highs",
        )
        if result.status == 0 and -result.fun > SNAP:
            found.append(tuple(int(v) for v in cell))
    return found


def cell_hits(coords: np.ndarray, simplices: Sequence[Simplex], grid: Optional[UnitGrid] = None) -> np.ndarray:
    """
    Unique (simplex position, cell...) rows: column 0 indexes ``simplices``,
    the remaining columns are integer cell coordinates.
    """
    grid = grid or UnitGrid()
    scaled = np.asarray(coords, dtype=float) / grid.cell
    n = scaled.shape[1]
    chunks = []
    by_size: Dict[int, List[int]] = {}
    for position, s in enumerate(simplices):
        by_size.setdefault(len(s), []).append(position)
    for size, positions in sorted(by_size.items()):
        ids = np.asarray(positions, dtype=np.int64)
        block = np.asarray([simplices[p] for p in positions])
        if size == 1:
            cells = np.floor(scaled[block[:, 0]]).astype(np.int64)
            chunks.append(np.column_stack([ids, cells]))
        elif size == 2:
            rows = _segment_rows(scaled[block[:, 0]], scaled[block[:, 1]])
            rows[:, 0] = ids[rows[:, 0]]
            chunks.append(rows)
        else:
            finder = _polygon_cells if size == 3 else _feasible_cells
            for position, vertices in zip(positions, block):
                cells = finder(scaled[vertices])
                if cells:
                    chunks.append(np.column_stack([np.full(len(cells), position), np.asarray(cells, dtype=np.int64)]))
    if not chunks:
        return np.zeros((0, n + 1), dtype=np.int64)
    return np.unique(np.concatenate(chunks).astype(np.int64), axis=0)


def dilate(hits: np.ndarray, n: int) -> np.ndarray:
    """Replace every (id, cell) row by (id, c) for the 3**n cells c around it."""
    offsets = np.asarray(list(itertools.product((-1, 0, 1), repeat=n)), dtype=np.int64)
    grown = hits[:, None, :].repeat(len(offsets), axis=1)
    grown[:, :, 1:] += offsets[None, :, :]
    return np.unique(grown.reshape(-1, n + 1), axis=0)


@dataclass(frozen=True)
class BlockCount:
    """Largest number of distinct labels whose simplices meet one 3**n block."""

    worst: int
    worst_cell: Optional[Tuple[int, ...]]
    counts: Dict[Tuple[int, ...], int] = field(repr=False, compare=False)

    def over(self, threshold: float) -> List[Tuple[int, ...]]:
        return sorted(c for c, count in self.counts.items() if count > threshold)


def block_counts(hits: np.ndarray, n: int, labels: Optional[np.ndarray] = None) -> BlockCount:
    """
    Count, for every cell, the distinct labels (default: simplex positions)
    meeting its 3**n block. ``labels`` maps simplex positions to labels.
    """
    if len(hits) == 0:
        return BlockCount(0, None, {})
    rows = hits.copy()
    if labels is not None:
        rows[:, 0] = np.asarray(labels)[rows[:, 0]]
        rows = np.unique(rows, axis=0)
    grown = dilate(rows, n)
    cells, counts = np.unique(grown[:, 1:], axis=0, return_counts=True)
    best = int(np.argmax(counts))
    table = {tuple(int(v) for v in c): int(k) for c, k in zip(cells, counts)}
    return BlockCount(int(counts[best]), tuple(int(v) for v in cells[best]), table)


@dataclass(frozen=True)
class ColorCellCount:
    """Same-color pieces per unit cell, over every (color, cell) event that occurs."""

    events: int
    bad: int  # events with more pieces than the limit
    worst: int
    worst_event: Optional[Tuple[int, ...]]  # (color, cell...)
    crowded: np.ndarray = field(repr=False, compare=False)  # pieces in bad events


def color_cell_counts(hits: np.ndarray, labels: np.ndarray, limit: int) -> ColorCellCount:
    """Count the pieces of each color meeting each cell; more than ``limit`` is a bad event."""
    if len(hits) == 0:
        return ColorCellCount(0, 0, 0, None, np.zeros(0, dtype=np.int64))
    events = np.column_stack([np.asarray(labels)[hits[:, 0]], hits[:, 1:]])
    keys, inverse, counts = np.unique(events, axis=0, return_inverse=True, return_counts=True)
    over = counts > limit
    crowded = np.unique(hits[over[inverse.reshape(-1)], 0])
    best = int(np.argmax(counts))
    return ColorCellCount(
        len(keys), int(over.sum()), int(counts[best]), tuple(int(v) for v in keys[best]), crowded
    )


def simplices_meeting_block(hits: np.ndarray, cell: Sequence[int]) -> np.ndarray:
    """Positions of the simplices meeting the 3**n block around ``cell``."""
    gap = np.abs(hits[:, 1:] - np.asarray(cell, dtype=np.int64)[None, :]).max(axis=1)
    return np.unique(hits[gap <= 1, 0])


_UNIT_GRAM: Dict[int, np.ndarray] = {}


def _unit_whitener(k: int) -> np.ndarray:
    # inverse square root of the Gram matrix of a regular unit k-simplex's edge vectors
    if k not in _UNIT_GRAM:
        gram = (np.eye(k) + np.ones((k, k))) / 2.0
        values, vectors = np.linalg.eigh(gram)
        _UNIT_GRAM[k] = vectors @ np.diag(values ** -0.5) @ vectors.T
    return _UNIT_GRAM[k]


def distortions(coords: np.ndarray, simplices: Sequence[Simplex]) -> np.ndarray:
    """
    Per simplex, the singular-value ratio of the linear map from the regular
    unit simplex onto its image; 1 for vertices and edges of positive length,
    infinite for collapsed images.
    """
    out = np.ones(len(simplices))
    by_size: Dict[int, List[int]] = {}
    for i, s in enumerate(simplices):
        if len(s) > 1:
            by_size.setdefault(len(s), []).append(i)
    for size, positions in by_size.items():
        block = coords[np.asarray([simplices[i] for i in positions])]
        edges = block[:, 1:, :] - block[:, :1, :]
        whitener = _unit_whitener(size - 1)
        values = np.linalg.eigvalsh(whitener @ np.einsum("ski,sli->skl", edges, edges) @ whitener)
        low, high = values[:, 0], values[:, -1]
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.sqrt(high / low)
        ratio[low <= 1e-12 * np.maximum(high, 1e-300)] = np.inf
        out[positions] = ratio
    return out


def distortion(coords: np.ndarray, simplices: Sequence[Simplex]) -> float:
    return float(distortions(coords, simplices).max(initial=1.0))


@dataclass(frozen=True)
class CoarseCertificate:
    forward: int  # most unit cells met by one source simplex image
    backward: int  # most source simplices whose images meet one unit cell
    bilipschitz_ratio: float
    radius: float
    exhaustive: bool = True
    simplices: int = 0
    cells: int = 0
    max_edge: float = 0.0

    def describe(self) -> str:
        return (
            f"forward={self.forward} backward={self.backward} "
            f"bilipschitz={self.bilipschitz_ratio:.3f} radius={self.radius:.3f}"
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "forward": self.forward,
            "backward": self.backward,
            "bilipschitz_ratio": self.bilipschitz_ratio if math.isfinite(self.bilipschitz_ratio) else "infinity",
            "radius": self.radius,
            "exhaustive": self.exhaustive,
            "simplices": self.simplices,
            "cells": self.cells,
            "max_edge": self.max_edge,
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "CoarseCertificate":
        ratio = payload.get("bilipschitz_ratio", 1.0)
        return cls(
            forward=int(payload["forward"]),
            backward=int(payload["backward"]),
            bilipschitz_ratio=math.inf if ratio == "infinity" else float(ratio),
            radius=float(payload.get("radius", 0.0)),
            exhaustive=bool(payload.get("exhaustive", True)),
            simplices=int(payload.get("simplices", 0)),
            cells=int(payload.get("cells", 0)),
            max_edge=float(payload.get("max_edge", 0.0)),
        )


def _enclosing_radius(coords: np.ndarray) -> float:
    if len(coords) == 0:
        return 0.0
    centre = (coords.max(axis=0) + coords.min(axis=0)) / 2.0
    return float(np.linalg.norm(coords - centre, axis=1).max())


def _max_edge(coords: np.ndarray, x: CellComplex) -> float:
    if x.dims < 1 or x.cells[1] == 0:
        return 0.0
    edges = np.asarray(x.simplices[1])
    return float(np.linalg.norm(coords[edges[:, 0]] - coords[edges[:, 1]], axis=1).max())


def _certificate_from_hits(rows: np.ndarray, label_count: int, **extra: Any) -> CoarseCertificate:
    # rows are unique (label, cell...) pairs
    if len(rows) == 0:
        return CoarseCertificate(0, 0, simplices=label_count, **extra)
    _, per_label = np.unique(rows[:, 0], return_counts=True)
    cells, per_cell = np.unique(rows[:, 1:], axis=0, return_counts=True)
    return CoarseCertificate(
        int(per_label.max()),
        int(per_cell.max()),
        simplices=label_count,
        cells=len(cells),
        **extra,
    )


def _check_coords(coords: Any, x: CellComplex) -> np.ndarray:
    array = np.asarray(coords, dtype=float)
    if array.ndim != 2 or array.shape[0] != x.vertex_count:
        raise ShapeMismatch(f"Need one point per vertex ({x.vertex_count}), got shape {array.shape}.")
    return array


def certify_coarse(coords: Any, x: CellComplex, grid: Optional[UnitGrid] = None) -> CoarseCertificate:
    """Exact forward/backward constants of the linear map on the facets of ``x``."""
    grid = grid or UnitGrid()
    array = _check_coords(coords, x)
    facets = list(x.facets)
    hits = cell_hits(array, facets, grid)
    certificate = _certificate_from_hits(
        hits,
        len(facets),
        bilipschitz_ratio=distortion(array, facets),
        radius=_enclosing_radius(array),
        max_edge=_max_edge(array, x),
    )
    LOGGER.debug("Coarse certificate: %s", certificate.describe())
    return certificate


def certify_points(points: Any, grid: Optional[UnitGrid] = None) -> CoarseCertificate:
    """Certificate of a bare point map (every point its own 0-simplex)."""
    array = np.asarray(points, dtype=float)
    return certify_coarse(array, CellComplex.from_simplices([(i,) for i in range(len(array))]), grid)


def certify_embedding(
    coords: Any,
    fine: CellComplex,
    base: CellComplex,
    grid: Optional[UnitGrid] = None,
    *,
    source: Optional[CellComplex] = None,
    vertex_map: Optional[Sequence[int]] = None,
) -> CoarseCertificate:
    """
    Certificate of the map ``base -> R^n`` realized piecewise linearly on its
    subdivision ``fine``; with ``source`` and a simplicial ``vertex_map``
    (source -> base), certify the composite source -> base -> R^n instead.
    The image of a source facet is the union of the fine simplices carried
    by its image simplex.
    """
    grid = grid or UnitGrid()
    array = _check_coords(coords, fine)
    lineage = fine.lineage_to(base)
    if source is None:
        source = base
        vertex_map = list(range(base.vertex_count))
    if vertex_map is None or len(vertex_map) != source.vertex_count:
        raise ShapeMismatch("vertex_map must list one base vertex per source vertex.")

    by_carrier: Dict[Simplex, List[Simplex]] = {}
    for level in fine.simplices:
        for piece in level:
            carrier = tuple(sorted({p for u in piece for p in lineage.carrier(u)}))
            by_carrier.setdefault(carrier, []).append(piece)

    pieces: List[Simplex] = []
    labels: List[int] = []
    for label, facet in enumerate(source.facets):
        image = tuple(sorted({int(vertex_map[v]) for v in facet}))
        for size in range(1, len(image) + 1):
            for face in itertools.combinations(image, size):
                for piece in by_carrier.get(face, ()):
                    pieces.append(piece)
                    labels.append(label)
    position = {p: i for i, p in enumerate(dict.fromkeys(pieces))}
    unique_pieces = list(position)
    hits = cell_hits(array, unique_pieces, grid)
    # expand hits so that each labelled piece contributes its own rows
    owners: Dict[int, List[int]] = {}
    for piece, label in zip(pieces, labels):
        owners.setdefault(position[piece], []).append(label)
    rows = [
        np.column_stack([np.full(len(chunk), label), chunk[:, 1:]])
        for pid, chunk in _group_rows(hits)
        for label in owners[pid]
    ]
    expanded = np.concatenate(rows) if rows else np.zeros((0, array.shape[1] + 1), dtype=np.int64)
    top = [p for p in unique_pieces if len(p) == fine.dims + 1]
    return _certificate_from_hits(
        np.unique(expanded.astype(np.int64), axis=0),
        len(source.facets),
        bilipschitz_ratio=distortion(array, top),
        radius=_enclosing_radius(array),
        max_edge=_max_edge(array, fine),
    )


def _group_rows(hits: np.ndarray) -> Iterator[Tuple[int, np.ndarray]]:
    if len(hits) == 0:
        return
    boundaries = np.flatnonzero(np.diff(hits[:, 0])) + 1
    for chunk in np.split(hits, boundaries):
        yield int(chunk[0, 0]), chunk


def certify_simplicial(vertex_map: Sequence[int], source: CellComplex, target: CellComplex) -> CoarseCertificate:
    """
    Coarse constants of a simplicial map between complexes: forward counts the
    target facets touching the image of a source facet, backward the source
    facets whose image touches a target facet.
    """
    facets_of_vertex: Dict[int, List[int]] = {}
    for t, facet in enumerate(target.facets):
        for v in facet:
            facets_of_vertex.setdefault(v, []).append(t)
    forward = 0
    preimages: Dict[int, set] = {}
    for s, facet in enumerate(source.facets):
        touched = {t for v in facet for t in facets_of_vertex.get(int(vertex_map[v]), ())}
        forward = max(forward, len(touched))
        for t in touched:
            preimages.setdefault(t, set()).add(s)
    backward = max((len(v) for v in preimages.values()), default=0)
    return CoarseCertificate(forward, backward, 1.0, 0.0, simplices=len(source.facets), cells=len(target.facets))


@dataclass(frozen=True)
class CompositionCheck:
    forward_bound: int
    backward_bound: int
    forward_ratio: float  # measured / bound
    backward_ratio: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "forward_bound": self.forward_bound,
            "backward_bound": self.backward_bound,
            "forward_ratio": self.forward_ratio,
            "backward_ratio": self.backward_ratio,
        }


def compose_certificates(
    first: CoarseCertificate, second: CoarseCertificate, measured: CoarseCertificate
) -> CompositionCheck:
    """Check that the composite of an A1-coarse and an A2-coarse map is A1*A2-coarse."""
    forward_bound = first.forward * second.forward
    backward_bound = first.backward * second.backward
    if measured.forward > forward_bound or measured.backward > backward_bound:
        raise CompositionBoundViolated(
            f"Composite measured ({measured.forward}, {measured.backward}) exceeds "
            f"bound ({forward_bound}, {backward_bound})."
        )
    return CompositionCheck(
        forward_bound,
        backward_bound,
        measured.forward / forward_bound if forward_bound else 0.0,
        measured.backward / backward_bound if backward_bound else 0.0,
    )


__all__ = [
    "BlockCount",
    "CoarseCertificate",
    "ColorCellCount",
    "CompositionCheck",
    "UnitGrid",
    "block_counts",
    "cell_hits",
    "certify_coarse",
    "certify_embedding",
    "certify_points",
    "certify_simplicial",
    "color_cell_counts",
    "compose_certificates",
    "dilate",
    "distortion",
    "distortions",
    "simplices_meeting_block",
]
