from __future__ import annotations

import numpy as np
import pytest

from local_codes.core.primitives.errors import NoCoordinates, PointOutsideComplex
from local_codes.core.topology.complex import CellComplex, cycle, simplex, triangulated_torus
from local_codes.core.topology.nerve import (
    NERVE_LIPSCHITZ_BOUND,
    ComplexPoint,
    lipschitz_estimate,
    make_point,
    nerve_complex,
    nerve_map,
    nerve_vertex_map,
    partition_of_unity,
    random_point,
    star_cover,
    unhit_nerve_simplices,
    vertex_point,
)
from local_codes.core.topology.subdivision import check_simplicial_map


def two_triangles() -> CellComplex:
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
    coords = [[0, 0], [1, 0], [0.5, 0.8], [5, 0], [6, 0], [5.5, 0.8]]
    return CellComplex.from_simplices(edges, coords=coords)


def test_hexagon_cover() -> None:
    cover = star_cover(cycle(6))
    assert cover.size == 6
    assert cover.multiplicity == 2
    assert cover.margins["measured_radius"] <= cover.margins["radius_bound"]
    assert cover.margins["measured_depth"] >= cover.margins["depth"]


def test_single_edge_cover() -> None:
    cover = star_cover(simplex(1))
    assert (cover.size, cover.multiplicity) == (2, 2)


def test_two_triangles_cover() -> None:
    x = two_triangles()
    cover = star_cover(x)
    assert cover.multiplicity == 2
    assert cover.multiplicity <= x.degree + 1
    assert cover.margins["measured_radius"] <= 2


def test_cover_needs_coordinates() -> None:
    with pytest.raises(NoCoordinates):
        star_cover(triangulated_torus(3))


def test_every_fine_cell_is_covered() -> None:
    cover = star_cover(simplex(2))
    assert all(owners for level in cover.cell_membership for owners in level)
    assert sum(len(cells) for cells in cover.sets) >= sum(cover.fine.cells)


def test_weight_one_deep_inside_a_set() -> None:
    cover = star_cover(cycle(6))
    assert partition_of_unity(cover, vertex_point(2)).weights == ((2, 1.0),)
    assert nerve_map(cover, vertex_point(2)).support == (2,)


def test_equal_weights_at_edge_midpoint() -> None:
    cover = star_cover(cycle(6))
    weights = partition_of_unity(cover, make_point(cover.base, (0, 1), (0.5, 0.5))).as_dict()
    assert weights == pytest.approx({0: 0.5, 1: 0.5})


def test_random_points_on_hexagon() -> None:
    x = cycle(6)
    cover = star_cover(x)
    nerve = nerve_complex(cover)
    rng = np.random.default_rng(1)
    for _ in range(1000):
        p = random_point(x, rng)
        point = nerve_map(cover, p, nerve)
        values = [w for _, w in point.weights]
        assert sum(values) == pytest.approx(1.0)
        assert min(values) >= 0
        assert set(point.support) <= set(cover.containing(p))


def test_bad_points_are_rejected() -> None:
    x = cycle(6)
    with pytest.raises(PointOutsideComplex):
        make_point(x, (0, 2), (0.5, 0.5))
    with pytest.raises(PointOutsideComplex):
        make_point(x, (0, 1), (0.7, 0.7))


def test_nerve_of_disjoint_sets_is_discrete() -> None:
    points = CellComplex.from_simplices([(0,), (1,)], coords=[[0.0], [3.0]])
    nerve = nerve_complex(star_cover(points))
    assert nerve.dims == 0
    assert nerve.vertex_count == 2


def test_hexagon_nerve_is_a_six_cycle() -> None:
    nerve = nerve_complex(star_cover(cycle(6)))
    assert nerve.cells == (6, 6)
    assert nerve.betti_numbers() == (1, 1)


def test_triangle_nerve_has_a_two_simplex() -> None:
    cover = star_cover(simplex(2))
    nerve = nerve_complex(cover)
    assert (0, 1, 2) in nerve.simplex_index[2]
    assert nerve.dims < cover.multiplicity


def test_nerve_vertex_maps_are_simplicial() -> None:
    cover = star_cover(cycle(6))
    nerve = nerve_complex(cover)
    assert nerve_vertex_map(cover) == tuple(range(6))
    check_simplicial_map(cover.base, nerve, nerve_vertex_map(cover))
    check_simplicial_map(cover.fine, nerve, nerve_vertex_map(cover, fine=True))


def test_unhit_simplices_are_reported() -> None:
    cover = star_cover(simplex(2))
    assert unhit_nerve_simplices(cover, [vertex_point(0)]) != []
    rng = np.random.default_rng(0)
    sampled = [random_point(cover.base, rng) for _ in range(500)]
    assert unhit_nerve_simplices(cover, sampled) == []


@pytest.mark.parametrize("factory", [lambda: cycle(6), lambda: simplex(2), two_triangles])
def test_sampled_lipschitz_ratio_is_bounded(factory) -> None:
    estimate = lipschitz_estimate(star_cover(factory()), pairs=1000, seed=3)
    assert estimate.pairs == 1000
    assert estimate.ratio <= NERVE_LIPSCHITZ_BOUND
    assert estimate.within_bound


@pytest.mark.slow
def test_lipschitz_ratio_on_ten_thousand_pairs() -> None:
    estimate = lipschitz_estimate(star_cover(simplex(2)), pairs=10_000, seed=5)
    assert estimate.within_bound


def test_point_on_shared_vertex_of_two_edges() -> None:
    cover = star_cover(cycle(6))
    p = ComplexPoint((0, 1), (1.0, 0.0))
    assert partition_of_unity(cover, p).support == (0,)
