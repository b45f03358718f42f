from __future__ import annotations

import itertools
import json

import networkx as nx
import pytest

from local_codes.core.primitives.errors import DimensionOutOfRange, FormatError, NoCoordinates
from local_codes.core.topology.code import code_from_complex, report, toric_code
from local_codes.core.topology.complex import (
    CellComplex,
    CellKind,
    cosystole,
    cubical_torus,
    cycle,
    is_closed_manifold,
    octahedron,
    random_surface_complex,
    simplex,
    systole,
    triangulated_torus,
    wedge_of_circles,
)


@pytest.mark.parametrize(
    "factory",
    [
        lambda: simplex(3),
        lambda: cycle(5),
        octahedron,
        wedge_of_circles,
        lambda: triangulated_torus(4),
        lambda: cubical_torus(3, 2),
        lambda: random_surface_complex(12, seed=4),
    ],
)
def test_constructed_complexes_satisfy_chain_condition(factory) -> None:
    assert factory().chain_condition_holds()


def test_simplicial_boundary_columns_have_k_plus_one_ones() -> None:
    x = triangulated_torus(3)
    for k in range(1, x.dims + 1):
        assert set(x.boundary[k].column_weights().tolist()) == {k + 1}


def test_betti_numbers() -> None:
    assert triangulated_torus(3).betti_numbers() == (1, 2, 1)
    assert octahedron().betti_numbers() == (1, 0, 1)
    assert cubical_torus(3, 2).betti_numbers() == (1, 3, 3, 1)
    assert simplex(2).betti_numbers() == (1, 0, 0)


def test_degree_and_volume() -> None:
    x = simplex(2)
    assert x.vol == 1
    assert x.degree == 3
    assert triangulated_torus(4).vol == 32


def test_code_from_complex_examples() -> None:
    assert report(code_from_complex(cubical_torus(2, 3), 1)).to_dict() == report(toric_code(2, 3)).to_dict()
    assert report(code_from_complex(octahedron(), 1)).dim == 0
    wedge = report(code_from_complex(wedge_of_circles(), 1))
    assert (wedge.dim, wedge.d_x) == (2, 3)


def test_code_from_complex_rejects_vertices() -> None:
    with pytest.raises(DimensionOutOfRange):
        code_from_complex(octahedron(), 0)


def test_systole_examples() -> None:
    assert systole(cubical_torus(2, 4), 1).weight == 4
    assert systole(triangulated_torus(4), 1).weight == 4

    sphere = systole(octahedron(), 1)
    assert sphere.trivial
    assert sphere.value == 0
    assert sphere.witness is None


def test_cosystole_matches_code_distance() -> None:
    x = cubical_torus(2, 3)
    result = cosystole(x, 1)
    assert result.weight == 3
    assert result.exact
    assert report(code_from_complex(x, 1)).d_z == 3


def test_systole_witness_is_a_cycle() -> None:
    x = triangulated_torus(3)
    witness = systole(x, 1).witness
    assert witness is not None
    assert x.boundary[1].apply(witness.vector).weight == 0


@pytest.mark.parametrize("seed", range(4))
def test_code_distances_equal_systoles_on_random_complexes(seed: int) -> None:
    x = random_surface_complex(9, seed=seed)
    code_report = report(code_from_complex(x, 1))
    assert code_report.d_x == systole(x, 1).weight
    assert code_report.d_z == cosystole(x, 1).weight
    assert code_report.dim == x.betti(1)


def test_random_surface_complex_respects_degree_bound() -> None:
    x = random_surface_complex(40, max_vertex_degree=6, seed=11)
    assert x.vol == 40
    assert x.max_vertex_degree <= 6
    assert x.edge_graph().number_of_nodes() == x.vertex_count


@pytest.mark.parametrize("seed", range(6))
def test_random_surface_complex_grows_to_acceptance_size(seed: int) -> None:
    x = random_surface_complex(64, seed=seed)
    assert x.vol == 64
    assert x.max_vertex_degree <= 6
    assert nx.is_connected(x.edge_graph())
    edge_use = {}
    for face in x.facets:
        for edge in itertools.combinations(face, 2):
            edge_use[edge] = edge_use.get(edge, 0) + 1
    assert max(edge_use.values()) <= 2


def test_random_surface_complex_is_reproducible() -> None:
    assert random_surface_complex(20, seed=2).facets == random_surface_complex(20, seed=2).facets


def test_tight_degree_bound_is_reported() -> None:
    with pytest.raises(ValueError):
        random_surface_complex(5, max_vertex_degree=3, attempts=2)


def test_closed_manifold_check() -> None:
    assert is_closed_manifold(octahedron())
    assert is_closed_manifold(triangulated_torus(3))
    assert is_closed_manifold(cubical_torus(2, 3))
    assert not is_closed_manifold(simplex(2))
    assert not is_closed_manifold(wedge_of_circles())


def test_cubical_torus_cells_are_ordered_by_direction() -> None:
    x = cubical_torus(2, 3)
    assert x.kind == CellKind.CUBICAL
    assert x.cells == (9, 18, 9)
    # the first nine edges run along direction 0
    assert x.simplices[1][0] == (0, 3)


def test_complex_json_interchange() -> None:
    x = octahedron()
    restored = CellComplex.from_dict(json.loads(json.dumps(x.to_dict())))
    assert restored == x
    with pytest.raises(FormatError):
        CellComplex.from_dict({"dims": 1, "cells": [2, 1]})


def test_from_simplices_requires_contiguous_labels() -> None:
    with pytest.raises(ValueError):
        CellComplex.from_simplices([(0, 2)])


def test_coordinates_are_required_for_geometry() -> None:
    with pytest.raises(NoCoordinates):
        triangulated_torus(3).coords_array()
