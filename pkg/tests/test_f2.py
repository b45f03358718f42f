from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from local_codes.core.primitives.errors import FormatError, ImageNotContained
from local_codes.core.primitives.f2 import (
    BitMatrix,
    BitVector,
    SearchBudget,
    min_coset_weight,
    nullspace_basis,
    rank,
)


def hamming() -> BitMatrix:
    return BitMatrix.from_dense([[(col >> bit) & 1 for col in range(1, 8)] for bit in range(3)])


def brute_force_coset(kernel, image, length):
    def span(vectors):
        out = set()
        for coeffs in itertools.product((0, 1), repeat=len(vectors)):
            bits = 0
            for c, v in zip(coeffs, vectors):
                if c:
                    bits ^= v.bits
            out.add(bits)
        return out

    trivial = span(image)
    weights = [bin(v).count("1") for v in span(kernel) if v not in trivial]
    return min(weights) if weights else math.inf


def test_rank_examples() -> None:
    assert rank(BitMatrix.identity(3)) == 3
    assert rank(BitMatrix.zeros(3, 7)) == 0
    assert rank(hamming()) == 3


def test_nullspace_examples() -> None:
    assert nullspace_basis(BitMatrix.identity(2)) == []
    assert nullspace_basis(BitMatrix(1, 2, ((0, 1),))) == [BitVector(2, (0, 1))]
    basis = nullspace_basis(hamming())
    assert len(basis) == 4
    for vector in basis:
        assert hamming().apply(vector).weight == 0
    assert rank(BitMatrix(4, 7, tuple(v.support for v in basis))) == 4


@pytest.mark.parametrize("seed", range(8))
def test_rank_nullity_on_random_matrices(seed: int) -> None:
    rng = np.random.default_rng(seed)
    matrix = BitMatrix.from_dense(rng.integers(0, 2, size=(6, 11)))
    basis = nullspace_basis(matrix)
    assert rank(matrix) + len(basis) == matrix.cols
    for vector in basis:
        assert matrix.apply(vector).weight == 0


def test_transpose_and_multiply() -> None:
    matrix = hamming()
    assert matrix.transpose().transpose() == matrix
    product = matrix @ matrix.transpose()
    expected = (matrix.to_dense().astype(int) @ matrix.to_dense().T.astype(int)) % 2
    assert np.array_equal(product.to_dense(), expected)


def test_min_coset_weight_examples() -> None:
    k1, k2 = BitVector(3, (0, 1)), BitVector(3, (1, 2))
    result = min_coset_weight([k1, k2], [])
    assert (result.weight, result.witness) == (2, BitVector(3, (0, 1)))
    assert result.exact

    assert min_coset_weight([k1, k2], [k1, k2]).is_trivial

    result = min_coset_weight([k1, k2], [k1])
    assert (result.weight, result.witness) == (2, BitVector(3, (0, 2)))


def test_equal_weight_ties_go_to_smallest_support() -> None:
    # generator order must not decide which minimum-weight word is reported
    forward = min_coset_weight([BitVector(3, (0, 1)), BitVector(3, (1, 2))], [])
    backward = min_coset_weight([BitVector(3, (1, 2)), BitVector(3, (0, 1))], [])
    assert forward.witness == backward.witness == BitVector(3, (0, 1))
    image = min_coset_weight([BitVector(4, (2, 3)), BitVector(4, (0, 1))], [BitVector(4, (0, 1, 2, 3))])
    assert (image.weight, image.witness) == (2, BitVector(4, (0, 1)))


def test_image_not_contained() -> None:
    with pytest.raises(ImageNotContained):
        min_coset_weight([BitVector(3, (0, 1))], [BitVector(3, (2,))])


@pytest.mark.parametrize("seed", range(6))
def test_enumeration_matches_brute_force(seed: int) -> None:
    rng = np.random.default_rng(100 + seed)
    matrix = BitMatrix.from_dense(rng.integers(0, 2, size=(4, 12)))
    kernel = nullspace_basis(matrix)
    image = kernel[: len(kernel) // 2]
    result = min_coset_weight(kernel, image)
    assert result.weight == brute_force_coset(kernel, image, matrix.cols)
    assert result.method == "enumeration"


def test_graphic_search_on_cycle_space() -> None:
    # 5-cycle incidence: the only nontrivial cycle is the whole cycle.
    incidence = BitMatrix(5, 5, tuple(tuple(sorted((i, (i + 4) % 5))) for i in range(5)))
    kernel = nullspace_basis(incidence)
    result = min_coset_weight(kernel, [], check_matrix=incidence)
    assert result.method == "graphic"
    assert result.weight == 5


def test_heuristic_search_is_flagged() -> None:
    rng = np.random.default_rng(3)
    matrix = BitMatrix.from_dense(rng.integers(0, 2, size=(4, 14)))
    kernel = nullspace_basis(matrix)
    result = min_coset_weight(kernel, [], SearchBudget(exact_qubits=2, isd_iterations=50))
    assert not result.exact
    assert result.method == "isd"
    assert result.limit == "exact_qubits"
    assert result.weight >= brute_force_coset(kernel, [], matrix.cols)
    assert matrix.apply(result.witness).weight == 0


def test_enumeration_limit_is_reported() -> None:
    kernel = nullspace_basis(hamming())
    image = kernel[:2]
    result = min_coset_weight(kernel, image, SearchBudget(enumeration_bits=3, isd_iterations=20))
    assert result.method == "isd"
    assert not result.exact
    assert result.limit == "enumeration_bits"
    assert result.to_dict()["limit"] == "enumeration_bits"
    assert result.weight >= brute_force_coset(kernel, image, 7)

    exact = min_coset_weight(kernel, image)
    assert exact.limit is None
    assert "limit" not in exact.to_dict()


def test_search_is_deterministic() -> None:
    matrix = hamming()
    kernel = nullspace_basis(matrix)
    first = min_coset_weight(kernel, [])
    second = min_coset_weight(kernel, [])
    assert first == second


def test_alist_and_json_interchange() -> None:
    text = "\n".join(
        [
            "3 2",
            "2 2",
            "1 2 1",
            "2 2",
            "1 0",
            "1 2",
            "2 0",
            "1 2",
            "2 3",
        ]
    )
    matrix = BitMatrix.from_alist(text)
    assert matrix.row_support == ((0, 1), (1, 2))
    assert BitMatrix.from_dict(matrix.to_dict()) == matrix
    with pytest.raises(FormatError):
        BitMatrix.from_alist("3 2\n2 2\n")
