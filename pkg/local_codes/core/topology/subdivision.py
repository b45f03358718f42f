"""
Subdivision operators and the pull-back of a subdivision along a simplicial map.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..primitives.errors import NotSimplicial, NotSimplicialMap, UnsupportedDimension
from .complex import CellComplex, Lineage, Simplex

LOGGER = logging.getLogger(__name__)

# Key of a point inside a complex: sorted (vertex, exact weight) pairs, weights > 0.
PointKey = Tuple[Tuple[int, Fraction], ...]


def _require_simplicial(x: CellComplex, operation: str) -> None:
    if not x.is_simplicial:
        raise NotSimplicial(f"{operation} needs a simplicial complex, got {x.kind.value}.")


def _refined_coords(x: CellComplex, lineage: Lineage) -> Optional[np.ndarray]:
    if x.vertex_coords is None:
        return None
    return lineage.to_sparse() @ x.coords_array()


def barycentric_subdivide(x: CellComplex) -> CellComplex:
    """Vertices are the simplices of ``x``; top cells are full flags, (d+1)! per d-simplex."""
    _require_simplicial(x, "barycentric_subdivide")
    offsets = np.concatenate([[0], np.cumsum(x.cells)]).astype(int)
    denominator = math.lcm(*range(1, x.dims + 2))
    numerators = []
    for k, level in enumerate(x.simplices):
        for s in level:
            numerators.append(tuple((v, denominator // (k + 1)) for v in s))

    def vid(s: Simplex) -> int:
        k = len(s) - 1
        return int(offsets[k]) + x.simplex_index[k][s]

    flags = []
    for facet in x.facets:
        for order in itertools.permutations(facet):
            flags.append(tuple(vid(tuple(sorted(order[: j + 1]))) for j in range(len(order))))
    lineage = Lineage(x, tuple(numerators), denominator, "barycentric")
    result = CellComplex.from_simplices(flags, lineage=lineage)
    coords = _refined_coords(x, lineage)
    return result.with_coords(coords) if coords is not None else result


def _staircase_simplices(m: int, factor: int) -> List[List[Tuple[int, ...]]]:
    """Kuhn simplices of r >= x1 >= ... >= xm >= 0, as lists of staircase points."""
    pieces = []
    for corner in itertools.product(range(factor), repeat=m):
        for order in itertools.permutations(range(m)):
            point = list(corner)
            chain = [tuple(point)]
            for axis in order:
                point[axis] += 1
                chain.append(tuple(point))
            if all(factor >= p[0] and all(p[i] >= p[i + 1] for i in range(m - 1)) and p[-1] >= 0 for p in chain):
                pieces.append(chain)
    return pieces


def _staircase_weights(point: Tuple[int, ...], factor: int) -> List[int]:
    m = len(point)
    weights = [factor - point[0]] + [point[i] - point[i + 1] for i in range(m - 1)] + [point[-1]]
    return weights


def edgewise_subdivide(x: CellComplex, factor: int) -> CellComplex:
    """
    Standard (Freudenthal) edgewise subdivision: every m'-simplex becomes
    exactly factor**m' simplices. Vertex order inside each simplex follows
    the global vertex labels so that shared faces are cut identically.
    """
    _require_simplicial(x, "edgewise_subdivide")
    if factor < 1:
        raise ValueError("Subdivision factor must be >= 1.")
    if x.dims > 3:
        raise UnsupportedDimension("edgewise_subdivide is implemented for dimension <= 3.")

    keys: Dict[Tuple[Tuple[int, int], ...], int] = {}
    numerators: List[Tuple[Tuple[int, int], ...]] = []

    def vertex_for(facet: Simplex, point: Tuple[int, ...]) -> int:
        if not point:
            key = ((facet[0], factor),)
        else:
            key = tuple((v, a) for v, a in zip(facet, _staircase_weights(point, factor)) if a > 0)
        if key not in keys:
            keys[key] = len(numerators)
            numerators.append(key)
        return keys[key]

    templates: Dict[int, List[List[Tuple[int, ...]]]] = {}
    pieces = []
    for facet in x.facets:
        m = len(facet) - 1
        if m == 0:
            pieces.append((vertex_for(facet, ()),))
            continue
        template = templates.setdefault(m, _staircase_simplices(m, factor))
        for chain in template:
            pieces.append(tuple(vertex_for(facet, point) for point in chain))

    # Relabel so that original vertices come first, then by exact position.
    order = sorted(range(len(numerators)), key=lambda i: (len(numerators[i]), numerators[i]))
    relabel = {old: new for new, old in enumerate(order)}
    lineage = Lineage(x, tuple(numerators[old] for old in order), factor, f"edgewise:{factor}")
    result = CellComplex.from_simplices(
        [tuple(relabel[v] for v in piece) for piece in pieces],
        lineage=lineage,
    )
    coords = _refined_coords(x, lineage)
    return result.with_coords(coords) if coords is not None else result


# ------------------------------------------------------------ simplicial maps
def check_simplicial_map(source: CellComplex, target: CellComplex, vertex_map: Sequence[int]) -> None:
    """Raise NotSimplicialMap unless every simplex of ``source`` maps onto a simplex of ``target``."""
    if len(vertex_map) != source.vertex_count:
        raise NotSimplicialMap(f"Vertex map has {len(vertex_map)} entries for {source.vertex_count} vertices.")
    for k, level in enumerate(source.simplices):
        for s in level:
            image = tuple(sorted({int(vertex_map[v]) for v in s}))
            dim = len(image) - 1
            if dim > target.dims or image not in target.simplex_index[dim]:
                raise NotSimplicialMap(f"Simplex {s} maps to {image}, which is not a simplex of the target.")


@dataclass(frozen=True)
class PullbackResult:
    complex: CellComplex
    vertex_map: Tuple[int, ...]
    volume_ratio: float  # vol(m') / vol(m)

    def to_dict(self) -> Dict[str, object]:
        return {
            "vertex_map": list(self.vertex_map),
            "volume_ratio": self.volume_ratio,
            "cells": list(self.complex.cells),
        }


def _sub_vertex_positions(x: CellComplex, x_sub: CellComplex) -> Tuple[List[Dict[int, Fraction]], Dict[PointKey, int]]:
    lineage = x_sub.lineage_to(x)
    weights = [lineage.weights(v) for v in range(x_sub.vertex_count)]
    lookup = {tuple(sorted(w.items())): v for v, w in enumerate(weights)}
    return weights, lookup


def subdivide_pullback(
    m: CellComplex,
    vertex_map: Sequence[int],
    x: CellComplex,
    x_sub: CellComplex,
) -> PullbackResult:
    """
    Cut every simplex of ``m`` along the preimages of the cells of ``x_sub``
    and re-triangulate, returning the subdivided source and a simplicial map
    onto ``x_sub``. Source dimension is limited to 2.
    """
    _require_simplicial(m, "subdivide_pullback")
    _require_simplicial(x_sub, "subdivide_pullback")
    if m.dims > 2:
        raise UnsupportedDimension("subdivide_pullback supports source complexes of dimension <= 2.")
    check_simplicial_map(m, x, vertex_map)
    if x_sub is x:
        return PullbackResult(m, tuple(int(v) for v in vertex_map), 1.0)
    try:
        sub_weights, sub_lookup = _sub_vertex_positions(x, x_sub)
    except ValueError as exc:
        raise NotSimplicialMap("Target subdivision does not descend from the mapped complex.") from exc

    # Pieces of x_sub grouped by the x-simplex spanned by their vertex carriers.
    pieces_by_carrier: Dict[Simplex, List[Simplex]] = {}
    for level in x_sub.simplices:
        for piece in level:
            carrier = tuple(sorted(set().union(*(sub_weights[v].keys() for v in piece))))
            pieces_by_carrier.setdefault(carrier, []).append(piece)

    def pieces_inside(tau: Simplex, dim: int) -> List[Simplex]:
        found = []
        for size in range(1, len(tau) + 1):
            for face in itertools.combinations(tau, size):
                found.extend(p for p in pieces_by_carrier.get(face, ()) if len(p) == dim + 1)
        return sorted(found)

    def sub_vertex_at(weights: Dict[int, Fraction]) -> int:
        key = tuple(sorted((v, w) for v, w in weights.items() if w > 0))
        try:
            return sub_lookup[key]
        except KeyError as exc:
            raise NotSimplicialMap(f"No subdivision vertex at {key}.") from exc

    new_keys: Dict[PointKey, int] = {}
    images: Dict[PointKey, int] = {}
    raw_pieces: List[Tuple[PointKey, ...]] = []

    def register(key: PointKey, image: int) -> PointKey:
        images.setdefault(key, image)
        new_keys.setdefault(key, len(new_keys))
        return key

    def source_key(weights: Dict[int, Fraction]) -> PointKey:
        return tuple(sorted((v, w) for v, w in weights.items() if w > 0))

    for sigma in m.facets:
        f = {v: int(vertex_map[v]) for v in sigma}
        tau = tuple(sorted(set(f.values())))
        if len(tau) == len(sigma):
            inverse = {f[v]: v for v in sigma}
            for piece in pieces_inside(tau, len(tau) - 1):
                raw_pieces.append(
                    tuple(
                        register(source_key({inverse[p]: w for p, w in sub_weights[u].items()}), u)
                        for u in piece
                    )
                )
        elif len(tau) == 1:
            raw_pieces.append(tuple(register(((v, Fraction(1)),), sub_vertex_at({f[v]: Fraction(1)})) for v in sigma))
        else:
            # triangle onto an edge: slabs between consecutive cut levels
            pair = sorted(v for v in sigma if sum(1 for u in sigma if f[u] == f[v]) == 2)
            apex = next(v for v in sigma if v not in pair)
            a, b = f[pair[0]], f[apex]
            levels = sorted({sub_weights[u].get(b, Fraction(0)) for u in pieces_vertices(pieces_inside(tuple(sorted((a, b))), 0))})

            def level_point(v: int, t: Fraction) -> PointKey:
                image = sub_vertex_at({a: 1 - t, b: t})
                if t == 1:
                    return register(((apex, Fraction(1)),), image)
                return register(source_key({v: 1 - t, apex: t}), image)

            for lower, upper in zip(levels, levels[1:]):
                u0, v0 = level_point(pair[0], lower), level_point(pair[1], lower)
                u1, v1 = level_point(pair[0], upper), level_point(pair[1], upper)
                if upper == 1:
                    raw_pieces.append((u0, v0, u1))
                else:
                    raw_pieces.append((u0, v0, v1))
                    raw_pieces.append((u0, u1, v1))

    ordered = sorted(new_keys, key=lambda key: (len(key), key))
    index = {key: i for i, key in enumerate(ordered)}
    denominator = math.lcm(*(w.denominator for key in ordered for _, w in key)) if ordered else 1
    lineage = Lineage(
        m,
        tuple(tuple((v, int(w * denominator)) for v, w in key) for key in ordered),
        denominator,
        "pullback",
    )
    result = CellComplex.from_simplices([tuple(index[key] for key in piece) for piece in raw_pieces], lineage=lineage)
    coords = _refined_coords(m, lineage)
    if coords is not None:
        result = result.with_coords(coords)
    sub_map = tuple(images[key] for key in ordered)
    check_simplicial_map(result, x_sub, sub_map)
    ratio = result.vol / m.vol if m.vol else 0.0
    LOGGER.debug("Pullback produced %d cells from %d (ratio %.2f).", result.vol, m.vol, ratio)
    return PullbackResult(result, sub_map, ratio)


def pieces_vertices(pieces: Iterable[Simplex]) -> Set[int]:
    return {v for piece in pieces for v in piece}


def touched_simplices(x: CellComplex, x_sub: CellComplex, edges: Iterable[Tuple[int, int]]) -> Set[Simplex]:
    """Simplices of ``x`` that carry some vertex or edge of a subcomplex of ``x_sub``."""
    lineage = x_sub.lineage_to(x)
    touched: Set[Simplex] = set()
    for u, v in edges:
        carrier_u = set(lineage.carrier(u))
        carrier_v = set(lineage.carrier(v))
        touched.add(tuple(sorted(carrier_u)))
        touched.add(tuple(sorted(carrier_v)))
        touched.add(tuple(sorted(carrier_u | carrier_v)))
    return touched


__all__ = [
    "PointKey",
    "PullbackResult",
    "barycentric_subdivide",
    "check_simplicial_map",
    "edgewise_subdivide",
    "subdivide_pullback",
    "touched_simplices",
]
