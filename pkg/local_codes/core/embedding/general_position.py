"""
Random perturbation into general position.

Vertices of pairs of vertex-disjoint simplices that come closer than the
target separation are redrawn uniformly inside a small ball around their
starting point until no pair is too close. Two faces of one facet are never
paired: their distance is fixed by the facet itself.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..primitives.errors import DimensionError, ResampleBudgetExhausted, ShapeMismatch
from ..topology.complex import CellComplex, Simplex

LOGGER = logging.getLogger(__name__)

MAX_MOVE = 0.01


def _faces(s: Simplex) -> List[Simplex]:
    return [f for k in range(1, len(s) + 1) for f in itertools.combinations(s, k)]


def simplex_distance(coords: np.ndarray, a: Simplex, b: Simplex) -> float:
    """
    Exact Euclidean distance between two simplex images: the closest pair of
    points lies in the relative interiors of some pair of faces, where it is
    the unconstrained affine least-squares solution.
    """
    best = np.inf
    for fa in _faces(a):
        pa = coords[list(fa)]
        for fb in _faces(b):
            pb = coords[list(fb)]
            # p = pa[0] + sum s_i (pa[i] - pa[0]), q likewise; minimize |p - q|
            columns = [pa[i] - pa[0] for i in range(1, len(fa))] + [pb[0] - pb[j] for j in range(1, len(fb))]
            offset = pa[0] - pb[0]
            if not columns:
                best = min(best, float(np.linalg.norm(offset)))
                continue
            matrix = np.column_stack(columns)
            solution = np.linalg.lstsq(matrix, -offset, rcond=None)[0]
            s, t = solution[: len(fa) - 1], solution[len(fa) - 1 :]
            if (s >= -1e-12).all() and s.sum() <= 1 + 1e-12 and (t >= -1e-12).all() and t.sum() <= 1 + 1e-12:
                best = min(best, float(np.linalg.norm(matrix @ solution + offset)))
    return best


@dataclass(frozen=True)
class GeneralPositionResult:
    coords: np.ndarray
    resamples: int
    pairs: int  # constrained pairs checked
    min_distance: float
    max_move: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "coords": self.coords.tolist(),
            "resamples": self.resamples,
            "pairs": self.pairs,
            "min_distance": self.min_distance if np.isfinite(self.min_distance) else "infinity",
            "max_move": self.max_move,
        }


def _disjoint_pairs(simplices: Sequence[Simplex], facets: Sequence[Simplex]) -> List[Tuple[int, int]]:
    """Vertex-disjoint pairs that are not both faces of one facet."""
    by_vertex: Dict[int, Set[int]] = {}
    for index, facet in enumerate(facets):
        for v in facet:
            by_vertex.setdefault(v, set()).add(index)
    stars = [set.intersection(*(by_vertex.get(v, set()) for v in s)) for s in simplices]
    pairs = []
    for i, j in itertools.combinations(range(len(simplices)), 2):
        if set(simplices[i]) & set(simplices[j]) or stars[i] & stars[j]:
            continue
        pairs.append((i, j))
    return pairs


def _ball_point(rng: np.random.Generator, n: int, radius: float) -> np.ndarray:
    direction = rng.standard_normal(n)
    direction /= np.linalg.norm(direction)
    return direction * radius * rng.uniform() ** (1.0 / n)


def _violations(
    coords: np.ndarray, simplices: Sequence[Simplex], pairs: Sequence[Tuple[int, int]], target: float
) -> Tuple[List[Tuple[int, int]], float]:
    lows = np.asarray([coords[list(s)].min(axis=0) for s in simplices])
    highs = np.asarray([coords[list(s)].max(axis=0) for s in simplices])
    bad, closest = [], np.inf
    for i, j in pairs:
        gap = np.maximum(lows[i] - highs[j], lows[j] - highs[i]).clip(min=0.0)
        if np.linalg.norm(gap) >= target:
            continue
        d = simplex_distance(coords, simplices[i], simplices[j])
        closest = min(closest, d)
        if d < target:
            bad.append((i, j))
    return bad, closest


def perturb_general_position(
    y: CellComplex,
    ambient_dim: int,
    target_sep: float,
    *,
    coords: Optional[Any] = None,
    max_move: float = MAX_MOVE,
    max_resamples: int = 1000,
    seed: int = 0,
) -> GeneralPositionResult:
    """Move vertices by at most ``max_move`` so vertex-disjoint simplices end up ``target_sep`` apart."""
    if 2 * y.dims > ambient_dim - 1:
        raise DimensionError(f"A {y.dims}-complex cannot be put in general position in R^{ambient_dim}.")
    start = np.asarray(coords if coords is not None else y.coords_array(), dtype=float)
    if start.shape != (y.vertex_count, ambient_dim):
        raise ShapeMismatch(f"Expected coordinates of shape {(y.vertex_count, ambient_dim)}, got {start.shape}.")
    simplices = [s for level in y.simplices for s in level]
    pairs = _disjoint_pairs(simplices, list(y.facets))
    current = start.copy()
    resamples = 0
    for round_ in itertools.count():
        bad, closest = _violations(current, simplices, pairs, target_sep)
        if not bad:
            move = float(np.linalg.norm(current - start, axis=1).max()) if len(start) else 0.0
            LOGGER.debug("General position after %d resamples over %d pairs", resamples, len(pairs))
            return GeneralPositionResult(current, resamples, len(pairs), closest, move)
        if resamples + len(bad) > max_resamples:
            raise ResampleBudgetExhausted("general_position", resamples)
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(round_,)))
        for v in sorted({v for i, j in bad for v in simplices[i] + simplices[j]}):
            current[v] = start[v] + _ball_point(rng, ambient_dim, max_move)
        resamples += len(bad)


__all__ = [
    "GeneralPositionResult",
    "MAX_MOVE",
    "perturb_general_position",
    "simplex_distance",
]
