from __future__ import annotations

import json

import networkx as nx
import numpy as np
import pytest

from local_codes.core.primitives.errors import ChainConditionViolated, DimensionOutOfRange, ShapeMismatch
from local_codes.core.primitives.f2 import BitMatrix
from local_codes.core.topology.code import (
    CssCode,
    check_graph,
    code_from_complex,
    cycle_matrix,
    hamming_matrix,
    hypergraph_product,
    ldpc_degree,
    quotient_dimension,
    report,
    steane_code,
    toric_code,
    validate,
)
from local_codes.core.topology.complex import cubical_torus, wedge_of_circles


def test_validate_accepts_generated_codes() -> None:
    validate(toric_code(2, 3))
    validate(steane_code())
    validate(hypergraph_product(cycle_matrix(4), cycle_matrix(3)))


def test_validate_reports_first_violation() -> None:
    code = CssCode(BitMatrix.from_dense([[1, 1]]), BitMatrix.from_dense([[1, 0]]))
    with pytest.raises(ChainConditionViolated) as info:
        validate(code)
    assert (info.value.i, info.value.j) == (0, 0)


def test_validate_rejects_shape_mismatch() -> None:
    with pytest.raises(ShapeMismatch):
        validate(CssCode(BitMatrix.zeros(1, 3), BitMatrix.zeros(1, 4)))


def test_hamming_rows_meet_evenly() -> None:
    dense = hamming_matrix().to_dense().astype(int)
    assert not ((dense @ dense.T) % 2).any()


def test_report_toric_code() -> None:
    result = report(toric_code(2, 3))
    assert (result.size, result.dim, result.d) == (18, 2, 3)
    assert result.exact
    assert result.ldpc_degree == 4


def test_report_steane_code() -> None:
    result = report(steane_code())
    assert (result.size, result.dim, result.d) == (7, 1, 3)


def test_report_single_free_qubit() -> None:
    result = report(CssCode(BitMatrix.zeros(0, 1), BitMatrix.zeros(0, 1)))
    assert (result.size, result.dim, result.d) == (1, 1, 1)


def test_report_zero_dimensional_code_is_infinite() -> None:
    result = report(CssCode(BitMatrix.identity(2), BitMatrix.zeros(0, 2)))
    assert result.dim == 0
    assert result.d == float("inf")
    assert json.loads(json.dumps(result.to_dict()))["d"] == "infinity"


def test_check_graph_examples() -> None:
    single = check_graph(CssCode(BitMatrix.from_dense([[1, 1, 0]]), BitMatrix.zeros(0, 3)))
    assert sorted(single.edges()) == [(0, 1)]

    diagonal = check_graph(CssCode(BitMatrix.identity(3), BitMatrix.zeros(0, 3)))
    assert diagonal.number_of_edges() == 0

    toric = toric_code(2, 3)
    graph = check_graph(toric)
    degree = ldpc_degree(toric)
    assert max(d for _, d in graph.degree()) <= min(12, degree * (degree - 1) * 2)
    assert nx.number_of_selfloops(graph) == 0


@pytest.mark.parametrize(
    ("n", "side", "size", "dim"),
    [(2, 3, 18, 2), (2, 2, 8, 2), (3, 2, 24, 3)],
)
def test_toric_code_sizes(n: int, side: int, size: int, dim: int) -> None:
    code = toric_code(n, side)
    assert code.size == size
    assert report(code).dim == dim


@pytest.mark.parametrize("side", [2, 3, 4, 5])
def test_toric_distance_equals_side(side: int) -> None:
    result = report(toric_code(2, side))
    assert result.exact
    assert (result.dim, result.d) == (2, side)


def test_toric_code_rejects_top_dimension() -> None:
    with pytest.raises(DimensionOutOfRange):
        toric_code(2, 3, k=2)


def test_hypergraph_product_of_cycles_matches_toric() -> None:
    product = report(hypergraph_product(cycle_matrix(3), cycle_matrix(3)))
    toric = report(toric_code(2, 3))
    assert (product.size, product.dim, product.d_x, product.d_z) == (toric.size, toric.dim, toric.d_x, toric.d_z)


def test_hypergraph_product_small_examples() -> None:
    pair = BitMatrix.from_dense([[1, 1]])
    result = report(hypergraph_product(pair, pair))
    assert (result.size, result.dim) == (5, 1)

    empty = BitMatrix.zeros(0, 1)
    degenerate = hypergraph_product(empty, empty)
    assert degenerate.size == 1
    assert report(degenerate).dim == 1


def test_code_from_wedge_of_circles() -> None:
    code = code_from_complex(wedge_of_circles(), 1)
    result = report(code)
    assert (result.dim, result.d_x) == (2, 3)


def test_code_from_cubical_torus_matches_toric() -> None:
    assert code_from_complex(cubical_torus(2, 3), 1).h1 == toric_code(2, 3).h1


@pytest.mark.parametrize("seed", range(5))
def test_rank_formula_matches_quotient_basis(seed: int) -> None:
    rng = np.random.default_rng(seed)
    a = BitMatrix.from_dense(rng.integers(0, 2, size=(2, 3)))
    b = BitMatrix.from_dense(rng.integers(0, 2, size=(2, 3)))
    code = hypergraph_product(a, b)
    assert code.size <= 20
    assert report(code).dim == quotient_dimension(code)


def test_code_json_interchange() -> None:
    code = toric_code(2, 2)
    restored = CssCode.from_dict(json.loads(json.dumps(code.to_dict())))
    assert restored == code
