"""
Randomized coarse embedding of a bounded-degree simplicial complex into R^n.

Stages:

    0. color the vertices and lay out one cap per color on the sphere of
       radius ``V**(1/(n-m))``;
    1. send every vertex to a random point of its cap; redraw the vertices of
       facets in any same-color 3**n block holding more than ``c1 * L`` facets;
    2. scale by ``s`` and subdivide so that every piece is shorter than ``s``;
    3. perturb every vertex by a random point of its color's cap on the sphere
       of radius ``s`` (coloring of the squared graph); color the pieces with
       ``A''`` colors, no two sharing a vertex, and redraw whenever n+1 pieces
       of one color meet one unit cell, leaving at most ``n * A''`` pieces
       per cell;
    4. subdivide down to unit edges and certify. A failed certificate sends
       the offending pieces back to stage 3.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from ..primitives.errors import DimensionError, NotSimplicial, ResampleBudgetExhausted
from ..primitives.trace import ResampleRound, ResampleTrace
from ..topology.complex import CellComplex, Simplex
from ..topology.subdivision import edgewise_subdivide
from .caps import CapLayout, color_count, facet_graph, greedy_color, place_caps, sample_in_cap
from .spatial import (
    CoarseCertificate,
    UnitGrid,
    block_counts,
    cell_hits,
    certify_coarse,
    color_cell_counts,
    distortions,
    simplices_meeting_block,
)

LOGGER = logging.getLogger(__name__)

STAGE_CAPS = 1
STAGE_PERTURB = 3
STAGE_FINAL = 4


@dataclass(frozen=True)
class EmbedParams:
    n: int = 2
    delta: float = 0.125
    log_floor: float = 2.0
    c1: float = 8.0
    a_max: Optional[int] = None  # default (n+1)(degree+1)*4
    bilipschitz_bound: float = 64.0
    epsilon: float = 0.25
    min_sep_fraction: float = 0.1
    max_resamples: Optional[int] = None  # default 10 V max(ln V, 2)
    seed: int = 7
    grid: UnitGrid = field(default_factory=UnitGrid)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("Target dimension must be positive.")
        if self.delta <= 0:
            raise ValueError("delta must be positive.")
        if self.log_floor < 2:
            raise ValueError("log_floor must be at least 2.")

    def resolved_a_max(self, x: CellComplex) -> int:
        if self.a_max is not None:
            return self.a_max
        return (self.n + 1) * (x.degree + 1) * 4

    def resolved_budget(self, volume: int) -> int:
        if self.max_resamples is not None:
            return self.max_resamples
        return math.ceil(10 * volume * max(math.log(max(volume, 1)), 2.0))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "delta": self.delta,
            "log_floor": self.log_floor,
            "c1": self.c1,
            "a_max": self.a_max,
            "bilipschitz_bound": self.bilipschitz_bound,
            "epsilon": self.epsilon,
            "min_sep_fraction": self.min_sep_fraction,
            "max_resamples": self.max_resamples,
            "seed": self.seed,
            "grid": self.grid.to_dict(),
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "EmbedParams":
        known = {k: payload[k] for k in cls.__dataclass_fields__ if k in payload and k != "grid"}
        if "grid" in payload:
            known["grid"] = UnitGrid.from_dict(payload["grid"])
        return cls(**known)


@dataclass(frozen=True)
class EmbedScales:
    volume: int
    log_term: float  # L = max(ln V, log_floor)
    rho0: float  # radius of the stage-0 sphere
    s: float
    R: float

    @classmethod
    def for_complex(cls, x: CellComplex, params: EmbedParams) -> "EmbedScales":
        volume = x.vol
        log_term = max(math.log(max(volume, 1)), params.log_floor)
        rho0 = max(volume, 1) ** (1.0 / (params.n - x.dims))
        power = log_term ** (params.n + 1)
        return cls(volume, log_term, rho0, params.delta * power, rho0 * power)

    def to_dict(self) -> Dict[str, Any]:
        return {"volume": self.volume, "log_term": self.log_term, "rho0": self.rho0, "s": self.s, "R": self.R}


@dataclass(frozen=True)
class EmbeddedComplex:
    complex: CellComplex
    coords: np.ndarray
    certificate: CoarseCertificate
    trace: ResampleTrace
    params: EmbedParams
    scales: EmbedScales
    first_factor: int  # r1
    second_factor: int  # r2
    stats: Dict[str, Any] = field(default_factory=dict)

    @property
    def subdivision_factor(self) -> int:
        """Pieces per original edge."""
        return self.first_factor * self.second_factor

    def describe(self) -> str:
        return (
            f"V={self.scales.volume} R={self.scales.R:.1f} r={self.subdivision_factor} "
            f"{self.certificate.describe()} resamples={self.trace.total_resamples()}"
        )

    def to_dict(self) -> Dict[str, Any]:
        payload = self.complex.to_dict()
        payload.update(
            {
                "coords": self.coords.tolist(),
                "certificate": self.certificate.to_dict(),
                "trace": self.trace.to_dict(),
                "params": self.params.to_dict(),
                "scales": self.scales.to_dict(),
                "subdivision": {"first": self.first_factor, "second": self.second_factor},
                "stats": dict(self.stats),
            }
        )
        return payload


def _stream(seed: int, stage: int, round_: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stage, round_)))


def _unit_simplex(m: int, n: int) -> np.ndarray:
    """Vertices of a regular simplex with unit edges, in the first m coordinates of R^n."""
    if m == 0:
        return np.zeros((1, n))
    centred = (np.eye(m + 1) - 1.0 / (m + 1)) / math.sqrt(2.0)
    basis = np.linalg.svd(centred)[2][:m]
    out = np.zeros((m + 1, n))
    out[:, :m] = centred @ basis.T
    return out


def _max_edge(coords: np.ndarray, x: CellComplex) -> float:
    if x.dims < 1 or x.cells[1] == 0:
        return 0.0
    edges = np.asarray(x.simplices[1])
    return float(np.linalg.norm(coords[edges[:, 0]] - coords[edges[:, 1]], axis=1).max())


def _piece_labels(facets: Sequence[Simplex]) -> np.ndarray:
    """Facet coloring in which no two facets sharing a vertex agree."""
    coloring = greedy_color(facet_graph(list(facets)))
    return np.asarray([coloring[i] for i in range(len(facets))], dtype=np.int64)


class CoarseEmbedder:
    """Runs the staged embedding for one parameter set; instances are reusable."""

    def __init__(self, params: Optional[EmbedParams] = None) -> None:
        self.params = params or EmbedParams()

    # ------------------------------------------------------------------ api
    def embed(self, x: CellComplex) -> EmbeddedComplex:
        params = self.params
        self._check(x)
        scales = EmbedScales.for_complex(x, params)
        budget = params.resolved_budget(scales.volume)
        trace = ResampleTrace()
        LOGGER.info(
            "\n%s\n[COARSE EMBEDDING]\nDimension: %d -> %d\nVolume: %d\nL: %.3f  s: %.3f  R: %.3f\nSeed: %d\n%s",
            "=" * 80,
            x.dims,
            params.n,
            scales.volume,
            scales.log_term,
            scales.s,
            scales.R,
            params.seed,
            "=" * 80,
        )
        if scales.volume <= 1:
            return self._clamped(x, scales, trace)

        coords1 = self._stage_caps(x, scales, trace, budget)
        coords2 = scales.s * coords1
        first = max(1, math.ceil(_max_edge(coords1, x)))
        x1 = edgewise_subdivide(x, first)
        coords_x1 = x1.lineage.to_sparse() @ coords2
        x1_facets = list(x1.facets)
        piece_labels = _piece_labels(x1_facets)
        a_double = int(piece_labels.max(initial=-1)) + 1
        layout = self._perturbation_layout(x1, scales)
        colors = greedy_color(nx.power(x1.edge_graph(), 2))
        offsets = np.zeros_like(coords_x1)
        rng = _stream(params.seed, STAGE_PERTURB, 0)
        for v in range(x1.vertex_count):
            offsets[v] = sample_in_cap(layout.caps[colors[v]], layout.radius, rng)

        a_max = params.resolved_a_max(x)
        for final_round in range(budget + 1):
            coords3 = self._stage_perturb(x1_facets, piece_labels, coords_x1, offsets, colors, layout, trace, budget)
            second = max(1, math.ceil(_max_edge(coords3, x1)))
            x2 = edgewise_subdivide(x1, second)
            coords_final = x2.lineage.to_sparse() @ coords3
            certificate = certify_coarse(coords_final, x2, params.grid)
            offenders = self._final_offenders(x2, x1, coords_final, certificate, a_max)
            redraw = sorted({v for f in offenders for v in x1_facets[f]})
            trace.append(
                ResampleRound("final", final_round, len(x1_facets), len(offenders), len(redraw), certificate.backward)
            )
            if not offenders:
                break
            self._charge(trace, budget, "final", certificate)
            rng = _stream(params.seed, STAGE_FINAL, final_round)
            for v in redraw:
                offsets[v] = sample_in_cap(layout.caps[colors[v]], layout.radius, rng)

        stats = {
            "colors": color_count(greedy_color(x.edge_graph())),
            "perturbation_colors": layout.count,
            "piece_colors": a_double,
            "a_max": a_max,
            "stage3_limit": params.n,
            "stage3_cell_bound": params.n * a_double,
            "stage3_max_tuples": self.tuple_count(x1_facets, coords3),
        }
        result = EmbeddedComplex(
            x2.with_coords(coords_final), coords_final, certificate, trace, params, scales, first, second, stats
        )
        LOGGER.info("Embedding finished: %s", result.describe())
        return result

    def first_round_fractions(self, x: CellComplex) -> Dict[str, float]:
        """
        Share of bad events found by the first verification round of stages 1
        and 3, with no resampling; used to watch how bad events thin out as
        the scale ``s`` grows.
        """
        self._check(x)
        scales = EmbedScales.for_complex(x, self.params)
        trace = ResampleTrace()
        coords1 = self._stage_caps(x, scales, trace, budget=None)
        first = max(1, math.ceil(_max_edge(coords1, x)))
        x1 = edgewise_subdivide(x, first)
        coords_x1 = x1.lineage.to_sparse() @ (scales.s * coords1)
        x1_facets = list(x1.facets)
        layout = self._perturbation_layout(x1, scales)
        colors = greedy_color(nx.power(x1.edge_graph(), 2))
        rng = _stream(self.params.seed, STAGE_PERTURB, 0)
        offsets = np.asarray([sample_in_cap(layout.caps[colors[v]], layout.radius, rng) for v in range(x1.vertex_count)])
        hits = cell_hits(coords_x1 + offsets, x1_facets, self.params.grid)
        counts = color_cell_counts(hits, _piece_labels(x1_facets), self.params.n)
        stage3 = counts.bad / counts.events if counts.events else 0.0
        return {"stage1": trace.rounds_of("stage1")[0].bad_fraction, "stage3": stage3}

    def tuple_count(self, facets: Sequence[Simplex], coords: np.ndarray) -> int:
        """Most (n+1)-tuples of same-color pieces meeting one 3**n block."""
        labels = _piece_labels(facets)
        hits = cell_hits(coords, list(facets), self.params.grid)
        totals: Dict[Tuple[int, ...], int] = {}
        for color in range(int(labels.max(initial=-1)) + 1):
            subset = hits[labels[hits[:, 0]] == color]
            for cell, count in block_counts(subset, self.params.n).counts.items():
                totals[cell] = totals.get(cell, 0) + math.comb(count, self.params.n + 1)
        return max(totals.values(), default=0)

    # --------------------------------------------------------------- stages
    def _check(self, x: CellComplex) -> None:
        if not x.is_simplicial:
            raise NotSimplicial(f"Coarse embedding needs a simplicial complex, got {x.kind.value}.")
        if x.dims >= self.params.n:
            raise DimensionError(f"Cannot embed a {x.dims}-complex coarsely into R^{self.params.n}.")

    def _clamped(self, x: CellComplex, scales: EmbedScales, trace: ResampleTrace) -> EmbeddedComplex:
        n = self.params.n
        coords = np.zeros((x.vertex_count, n))
        top = next((f for f in x.facets if len(f) == x.dims + 1), ())
        coords[list(top)] = _unit_simplex(x.dims, n)
        rest = [v for v in range(x.vertex_count) if v not in set(top)]
        for j, v in enumerate(rest):
            coords[v, 0] = 2.0 + 2.0 * j
        certificate = certify_coarse(coords, x, self.params.grid)
        LOGGER.info("Volume %d at most 1; placing the complex at unit scale.", scales.volume)
        return EmbeddedComplex(x.with_coords(coords), coords, certificate, trace, self.params, scales, 1, 1)

    def _stage_caps(
        self, x: CellComplex, scales: EmbedScales, trace: ResampleTrace, budget: Optional[int]
    ) -> np.ndarray:
        params = self.params
        colors = greedy_color(x.edge_graph())
        layout = place_caps(params.n, scales.rho0, color_count(colors), params.min_sep_fraction, params.epsilon)
        rng = _stream(params.seed, STAGE_CAPS, 0)
        coords = np.asarray([sample_in_cap(layout.caps[colors[v]], layout.radius, rng) for v in range(x.vertex_count)])
        facets = list(x.facets)
        facet_colors = greedy_color(facet_graph(facets))
        labels = np.asarray([facet_colors[i] for i in range(len(facets))])
        threshold = params.c1 * scales.log_term
        for round_ in range(1, (budget or 0) + 2):
            hits = cell_hits(coords, facets, params.grid)
            bad: List[Tuple[int, Tuple[int, ...]]] = []
            checked = 0
            worst = 0
            for color in range(color_count(facet_colors)):
                subset = hits[labels[hits[:, 0]] == color]
                counts = block_counts(subset, params.n)
                checked += len(counts.counts)
                worst = max(worst, counts.worst)
                bad.extend((color, cell) for cell in counts.over(threshold))
            redraw: Set[int] = set()
            for color, cell in bad:
                subset = hits[labels[hits[:, 0]] == color]
                redraw.update(v for f in simplices_meeting_block(subset, cell) for v in facets[f])
            trace.append(ResampleRound("stage1", round_ - 1, checked, len(bad), len(redraw), worst))
            if not bad or budget is None:
                return coords
            if trace.total_resamples() > budget:
                raise ResampleBudgetExhausted("stage1", trace.total_resamples(), worst_cell=bad[0][1], worst_count=worst)
            rng = _stream(params.seed, STAGE_CAPS, round_)
            for v in sorted(redraw):
                coords[v] = sample_in_cap(layout.caps[colors[v]], layout.radius, rng)
        return coords

    def _perturbation_layout(self, x1: CellComplex, scales: EmbedScales) -> CapLayout:
        colors = greedy_color(nx.power(x1.edge_graph(), 2))
        params = self.params
        return place_caps(params.n, scales.s, color_count(colors), params.min_sep_fraction, params.epsilon)

    def _stage_perturb(
        self,
        facets: List[Simplex],
        labels: np.ndarray,
        base: np.ndarray,
        offsets: np.ndarray,
        colors: Dict[Any, int],
        layout: CapLayout,
        trace: ResampleTrace,
        budget: int,
    ) -> np.ndarray:
        params = self.params
        for round_ in range(budget + 1):
            coords = base + offsets
            hits = cell_hits(coords, facets, params.grid)
            counts = color_cell_counts(hits, labels, params.n)
            redraw = sorted({v for f in counts.crowded for v in facets[f]})
            trace.append(ResampleRound("stage3", round_, counts.events, counts.bad, len(redraw), counts.worst))
            if not counts.bad:
                return coords
            if trace.total_resamples() > budget:
                worst_cell = counts.worst_event[1:] if counts.worst_event else None
                raise ResampleBudgetExhausted(
                    "stage3", trace.total_resamples(), worst_cell=worst_cell, worst_count=counts.worst
                )
            rng = _stream(params.seed, STAGE_PERTURB, len(trace.rounds))
            for v in redraw:
                offsets[v] = sample_in_cap(layout.caps[colors[v]], layout.radius, rng)
        return base + offsets

    def _final_offenders(
        self,
        x2: CellComplex,
        x1: CellComplex,
        coords: np.ndarray,
        certificate: CoarseCertificate,
        a_max: int,
    ) -> List[int]:
        """Indices of stage-3 pieces that carry a crowded cell or a distorted final piece."""
        facets = list(x2.facets)
        culprits: Set[int] = set()
        if certificate.backward > a_max:
            hits = cell_hits(coords, facets, self.params.grid)
            _, inverse, counts = np.unique(hits[:, 1:], axis=0, return_inverse=True, return_counts=True)
            crowded = np.flatnonzero(counts[inverse.reshape(-1)] > a_max)
            culprits.update(int(f) for f in np.unique(hits[crowded, 0]))
        if certificate.bilipschitz_ratio > self.params.bilipschitz_bound:
            ratios = distortions(coords, facets)
            culprits.update(int(f) for f in np.flatnonzero(ratios > self.params.bilipschitz_bound))
        if not culprits:
            return []
        lineage = x2.lineage
        index = {s: i for i, s in enumerate(x1.facets)}
        parents = set()
        for f in culprits:
            carrier = tuple(sorted({p for u in facets[f] for p in lineage.carrier(u)}))
            parent = carrier if carrier in index else next(s for s in index if set(carrier) <= set(s))
            parents.add(index[parent])
        return sorted(parents)

    def _charge(self, trace: ResampleTrace, budget: int, stage: str, certificate: CoarseCertificate) -> None:
        if trace.total_resamples() > budget:
            raise ResampleBudgetExhausted(stage, trace.total_resamples(), worst_count=certificate.backward)


def gg_embed(x: CellComplex, params: Optional[EmbedParams] = None) -> EmbeddedComplex:
    """Embed ``x`` coarsely into R^n with the default staged engine."""
    return CoarseEmbedder(params).embed(x)


__all__ = [
    "CoarseEmbedder",
    "EmbedParams",
    "EmbedScales",
    "EmbeddedComplex",
    "gg_embed",
]
