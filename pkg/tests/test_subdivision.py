from __future__ import annotations

from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from local_codes.core.primitives.errors import NotSimplicial, NotSimplicialMap, UnsupportedDimension
from local_codes.core.topology.complex import (
    CellComplex,
    cubical_torus,
    cycle,
    octahedron,
    simplex,
    triangle_boundary,
    triangulated_torus,
)
from local_codes.core.topology.subdivision import (
    barycentric_subdivide,
    check_simplicial_map,
    edgewise_subdivide,
    subdivide_pullback,
    touched_simplices,
)


def test_barycentric_examples() -> None:
    edge = barycentric_subdivide(simplex(1))
    assert (edge.cells[0], edge.cells[1]) == (3, 2)
    assert barycentric_subdivide(simplex(2)).vol == 6
    torus = triangulated_torus(3)
    refined = barycentric_subdivide(torus)
    assert refined.betti_numbers() == torus.betti_numbers()
    assert refined.chain_condition_holds()


def test_barycentric_vertex_sits_at_barycenter() -> None:
    refined = barycentric_subdivide(simplex(2))
    lineage = refined.lineage
    centre = [v for v in range(refined.vertex_count) if len(lineage.carrier(v)) == 3]
    assert len(centre) == 1
    assert set(lineage.weights(centre[0]).values()) == {Fraction(1, 3)}


@pytest.mark.parametrize(("d", "factor", "count"), [(1, 3, 3), (2, 2, 4), (2, 4, 16), (3, 2, 8), (3, 3, 27)])
def test_edgewise_piece_counts(d: int, factor: int, count: int) -> None:
    refined = edgewise_subdivide(simplex(d), factor)
    assert refined.vol == count
    assert refined.betti_numbers() == simplex(d).betti_numbers()


def test_edgewise_preserves_homology_of_closed_surfaces() -> None:
    for x in (octahedron(), triangulated_torus(3)):
        refined = edgewise_subdivide(x, 3)
        assert refined.vol == 9 * x.vol
        assert refined.betti_numbers() == x.betti_numbers()


def test_edgewise_every_edge_gets_factor_children() -> None:
    x = triangle_boundary()
    refined = edgewise_subdivide(x, 4)
    assert refined.cells[1] == 12
    assert refined.vertex_count == 12


def test_edgewise_keeps_original_vertex_ids_and_refines_coords() -> None:
    x = simplex(1)
    refined = edgewise_subdivide(x, 2)
    coords = refined.coords_array()
    assert np.allclose(coords[:2], x.coords_array())
    assert np.allclose(coords[2], x.coords_array().mean(axis=0))


def test_edgewise_lineage_composes() -> None:
    x = simplex(2)
    twice = edgewise_subdivide(edgewise_subdivide(x, 2), 3)
    lineage = twice.lineage_to(x)
    assert lineage.denominator == 6
    for v in range(twice.vertex_count):
        assert sum(lineage.weights(v).values()) == 1
    assert twice.vol == 36


def test_subdivision_rejects_bad_inputs() -> None:
    with pytest.raises(NotSimplicial):
        edgewise_subdivide(cubical_torus(2, 3), 2)
    with pytest.raises(NotSimplicial):
        barycentric_subdivide(cubical_torus(2, 3))
    with pytest.raises(UnsupportedDimension):
        edgewise_subdivide(simplex(4), 2)


def test_check_simplicial_map() -> None:
    check_simplicial_map(cycle(6), triangle_boundary(), [i % 3 for i in range(6)])
    two_points = CellComplex.from_simplices([(0,), (1,)])
    with pytest.raises(NotSimplicialMap):
        check_simplicial_map(simplex(1), two_points, [0, 1])


def test_pullback_of_wrapped_circle() -> None:
    x = triangle_boundary()
    x_sub = edgewise_subdivide(x, 2)
    result = subdivide_pullback(cycle(12), [i % 3 for i in range(12)], x, x_sub)
    assert result.complex.cells[1] == 24
    check_simplicial_map(result.complex, x_sub, result.vertex_map)
    assert result.complex.betti_numbers() == (1, 1)

    degree_one = subdivide_pullback(cycle(12), [i // 4 for i in range(12)], x, x_sub)
    assert degree_one.complex.cells[1] == 15


def test_pullback_identity_subdivision() -> None:
    m = cycle(6)
    x = triangle_boundary()
    result = subdivide_pullback(m, [i % 3 for i in range(6)], x, x)
    assert result.complex is m
    assert result.vertex_map == tuple(i % 3 for i in range(6))


def test_pullback_of_torus_keeps_homology() -> None:
    m = triangulated_torus(3)
    target = simplex(2)
    x_sub = edgewise_subdivide(target, 2)
    wrap = [(i + j) % 3 for i in range(3) for j in range(3)]
    result = subdivide_pullback(m, wrap, target, x_sub)
    assert result.complex.betti(1) == 2
    assert result.complex.vol == 4 * m.vol

    collapse = [0 if i == 0 else 1 for i in range(3) for j in range(3)]
    folded = subdivide_pullback(m, collapse, target, x_sub)
    assert folded.complex.betti(1) == 2
    check_simplicial_map(folded.complex, x_sub, folded.vertex_map)
    assert folded.volume_ratio <= 4 * 2**target.dims


def test_pullback_rejects_non_simplicial_map() -> None:
    x = triangle_boundary()
    with pytest.raises(NotSimplicialMap):
        subdivide_pullback(simplex(1), [0, 1], CellComplex.from_simplices([(0,), (1,)]), x)


@pytest.mark.parametrize("factor", [2, 4])
def test_connected_subcomplexes_are_long(factor: int) -> None:
    x = triangulated_torus(3)
    x_sub = edgewise_subdivide(x, factor)
    graph = x_sub.edge_graph()
    constant = 4 * (x.degree + 1)
    rng = np.random.default_rng(factor)
    for _ in range(20):
        start = int(rng.integers(x_sub.vertex_count))
        walk = [start]
        for _ in range(int(rng.integers(1, 30))):
            walk.append(int(rng.choice(sorted(graph.neighbors(walk[-1])))))
        edges = {tuple(sorted(e)) for e in zip(walk, walk[1:]) if e[0] != e[1]}
        touched = touched_simplices(x, x_sub, edges)
        assert nx.is_connected(graph.edge_subgraph(edges))
        assert len(touched) <= constant * (len(edges) / factor + 1)
