"""
Vertex colorings and disjoint spherical caps.

Caps are laid out deterministically (equal angles on the circle, regular
simplex directions when they fit, otherwise a farthest-point selection
from a Halton sequence) and sized so that their total area is
``epsilon`` times the sphere area.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Hashable, List, Tuple

import networkx as nx
import numpy as np
from scipy import optimize, special, stats

from ..primitives.errors import InfeasibleCaps

LOGGER = logging.getLogger(__name__)


def _by_degree(graph: nx.Graph, colors: Dict[Hashable, int]) -> List[Hashable]:
    return sorted(graph.nodes, key=lambda node: (-graph.degree(node), node))


def greedy_color(graph: nx.Graph) -> Dict[Hashable, int]:
    """Proper coloring with at most max degree + 1 colors, largest degree first, ties by label."""
    return dict(nx.greedy_color(graph, strategy=_by_degree))


def color_count(coloring: Dict[Hashable, int]) -> int:
    return max(coloring.values(), default=-1) + 1


def facet_graph(facets: List[Tuple[int, ...]]) -> nx.Graph:
    """Facets as nodes, adjacent when they share a vertex."""
    graph = nx.Graph()
    graph.add_nodes_from(range(len(facets)))
    owners: Dict[int, List[int]] = {}
    for i, facet in enumerate(facets):
        for v in facet:
            owners.setdefault(v, []).append(i)
    for group in owners.values():
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                graph.add_edge(group[a], group[b])
    return graph


def cap_area_fraction(n: int, angle: float) -> float:
    """Share of the sphere in R^n covered by a cap of the given angular radius (angle <= pi/2)."""
    if n == 1:
        return 0.5 if angle >= 0 else 0.0
    return 0.5 * float(special.betainc((n - 1) / 2.0, 0.5, math.sin(angle) ** 2))


def solve_cap_angle(n: int, fraction: float) -> float:
    if n == 1:
        return 0.0
    if not 0.0 < fraction < 0.5:
        raise InfeasibleCaps(f"A single cap cannot cover {fraction:.3f} of the sphere.")
    return float(optimize.brentq(lambda t: cap_area_fraction(n, t) - fraction, 0.0, math.pi / 2.0))


@dataclass(frozen=True)
class Cap:
    center: Tuple[float, ...]  # unit vector
    angle: float

    def to_dict(self) -> Dict[str, Any]:
        return {"center": list(self.center), "angle": self.angle}


@dataclass(frozen=True)
class CapLayout:
    n: int
    radius: float
    caps: Tuple[Cap, ...]
    min_gap: float  # smallest distance between two caps

    @property
    def count(self) -> int:
        return len(self.caps)

    def centers(self) -> np.ndarray:
        return self.radius * np.asarray([c.center for c in self.caps])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "radius": self.radius,
            "min_gap": self.min_gap,
            "caps": [c.to_dict() for c in self.caps],
        }


def _simplex_directions(n: int, count: int) -> np.ndarray:
    centred = np.eye(count) - 1.0 / count
    # orthonormal basis of the sum-zero hyperplane
    basis = np.linalg.svd(centred)[2][: count - 1]
    points = centred @ basis.T
    points /= np.linalg.norm(points, axis=1, keepdims=True)
    out = np.zeros((count, n))
    out[:, : count - 1] = points
    return out


def _halton_directions(n: int, count: int) -> np.ndarray:
    candidates = stats.qmc.Halton(d=n, scramble=False).random(64 * count + 1)[1:]
    candidates = stats.norm.ppf(np.clip(candidates, 1e-9, 1 - 1e-9))
    candidates /= np.linalg.norm(candidates, axis=1, keepdims=True)
    chosen = [0]
    nearest = np.linalg.norm(candidates - candidates[0], axis=1)
    while len(chosen) < count:
        pick = int(np.argmax(nearest))
        chosen.append(pick)
        nearest = np.minimum(nearest, np.linalg.norm(candidates - candidates[pick], axis=1))
    return candidates[chosen]


def cap_directions(n: int, count: int) -> np.ndarray:
    if n == 1:
        if count > 2:
            raise InfeasibleCaps("The 0-sphere holds at most two caps.")
        return np.asarray([[1.0], [-1.0]])[:count]
    if n == 2:
        angles = 2.0 * math.pi * np.arange(count) / count
        return np.column_stack([np.cos(angles), np.sin(angles)])
    if count <= n + 1:
        return _simplex_directions(n, count) if count > 1 else np.eye(n)[:1]
    return _halton_directions(n, count)


def place_caps(
    n: int,
    radius: float,
    count: int,
    min_sep_fraction: float = 0.1,
    epsilon: float = 0.25,
) -> CapLayout:
    """``count`` disjoint caps on the sphere of ``radius`` in R^n, total area ``epsilon`` of the sphere."""
    if count < 1:
        raise InfeasibleCaps("Need at least one cap.")
    if not 0.0 < epsilon <= 1.0:
        raise InfeasibleCaps(f"Cap area share {epsilon} exceeds the sphere.")
    directions = cap_directions(n, count)
    angle = solve_cap_angle(n, min(epsilon / count, 0.49))
    gap = math.inf
    if count > 1:
        cosines = np.clip(directions @ directions.T, -1.0, 1.0)
        np.fill_diagonal(cosines, -1.0)
        closest = float(np.arccos(cosines.max()))
        free = closest - 2.0 * angle
        gap = 2.0 * radius * math.sin(free / 2.0) if free > 0 else 0.0
        if gap < min_sep_fraction * radius:
            raise InfeasibleCaps(
                f"{count} caps in dimension {n} leave a gap of {gap:.4f} < {min_sep_fraction * radius:.4f}."
            )
    caps = tuple(Cap(tuple(float(c) for c in d), angle) for d in directions)
    LOGGER.debug("Placed %d caps (angle %.4f) on the sphere of radius %.3f in R^%d", count, angle, radius, n)
    return CapLayout(n, radius, caps, gap)


def sample_in_cap(cap: Cap, radius: float, rng: np.random.Generator) -> np.ndarray:
    """Uniform point of the cap on the sphere of ``radius``."""
    center = np.asarray(cap.center)
    n = len(center)
    if n == 1 or cap.angle == 0.0:
        return radius * center
    top = cap_area_fraction(n, cap.angle)
    u = rng.uniform(0.0, top)
    polar = math.asin(math.sqrt(float(special.betaincinv((n - 1) / 2.0, 0.5, 2.0 * u))))
    tangent = rng.standard_normal(n)
    tangent -= tangent.dot(center) * center
    norm = np.linalg.norm(tangent)
    if norm < 1e-12:
        return radius * center
    return radius * (math.cos(polar) * center + math.sin(polar) * tangent / norm)


__all__ = [
    "Cap",
    "CapLayout",
    "cap_area_fraction",
    "cap_directions",
    "color_count",
    "facet_graph",
    "greedy_color",
    "place_caps",
    "sample_in_cap",
    "solve_cap_angle",
]
