from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from local_codes.core.embedding.engine import EmbedParams, gg_embed
from local_codes.core.locality.placement import (
    LocalityCertificate,
    Placement,
    certify_local,
    empty_code,
    fold_point,
    fold_torus,
    pad_code,
    path_block,
    placement_from_embedding,
    serpentine,
    snap_to_lattice,
)
from local_codes.core.primitives.errors import CubeTooSmall, FormatError, ShapeMismatch
from local_codes.core.topology.code import code_from_complex, report, toric_code
from local_codes.core.topology.complex import cycle, simplex


# ------------------------------------------------------------------- folding
def test_fold_point_examples() -> None:
    assert fold_point((0, 0), 4) == (2.0, 2.0)
    assert fold_point((2, 2), 4) == (0.0, 0.0)


@pytest.mark.parametrize("side", range(3, 17))
def test_folded_toric_code_is_local(side: int) -> None:
    placement = fold_torus(2, side)
    certificate = certify_local(placement.code, placement)
    assert certificate.injective
    assert certificate.collisions == 0
    assert certificate.check_constant <= 8
    assert placement.code.size == 2 * side * side


@pytest.mark.slow
def test_fold_constant_does_not_grow() -> None:
    constants = set()
    for side in (17, 24, 32, 48, 64):
        placement = fold_torus(2, side)
        certificate = certify_local(placement.code, placement)
        assert certificate.injective
        constants.add(certificate.check_constant)
    assert max(constants) <= 8


@pytest.mark.parametrize("side", [3, 4, 5])
def test_fold_in_three_dimensions(side: int) -> None:
    for k in (1, 2):
        placement = fold_torus(3, side, k)
        certificate = certify_local(placement.code, placement)
        assert certificate.injective
        assert certificate.check_constant <= 9


def test_fold_qubits_follow_code_order() -> None:
    placement = fold_torus(2, 4)
    assert placement.code == toric_code(2, 4)
    # the horizontal edge at the origin has doubled barycenter (1, 0)
    assert placement.points[0] == (2 * 3 + 1, 2 * 4 + 1)


# --------------------------------------------------------------- certificate
def test_duplicate_points_are_not_injective() -> None:
    code = toric_code(2, 3)
    points = [(i, 0) for i in range(code.size)]
    points[1] = points[0]
    certificate = certify_local(code, Placement(code, tuple(points), 2))
    assert not certificate.injective
    assert certificate.collisions == 1
    assert "not-injective" in certificate.flags


def test_far_point_inflates_cube_constant() -> None:
    code = path_block(100)
    points = [(i, 0) for i in range(100)]
    points[-1] = (10**6, 0)
    certificate = certify_local(code, Placement(code, tuple(points), 2))
    assert certificate.cube_constant == pytest.approx(10**6 / 10.0)
    assert "cube-constant" in certificate.flags
    assert certificate.check_constant == 10**6 - 98


def test_certificate_is_idempotent() -> None:
    placement = fold_torus(2, 6)
    first = certify_local(placement.code, placement)
    second = certify_local(placement.code, placement)
    assert first == second
    assert LocalityCertificate.from_dict(first.to_dict()) == first


def test_check_limit_is_recorded() -> None:
    placement = fold_torus(2, 5)
    certificate = certify_local(placement.code, placement, check_limit=1)
    assert "check-constant" in certificate.flags
    assert not certificate.ok


def test_placement_needs_one_point_per_qubit() -> None:
    code = toric_code(2, 3)
    with pytest.raises(ShapeMismatch):
        Placement(code, ((0, 0),), 2)


def test_placement_json_round_trip() -> None:
    placement = fold_torus(2, 3)
    payload = placement.to_dict()
    assert set(payload) >= {"n", "points"}
    assert Placement.from_dict(payload, placement.code) == placement
    with pytest.raises(FormatError):
        Placement.from_dict({"n": 2}, placement.code)


# ------------------------------------------------------------------ snapping
def test_identical_points_snap_apart() -> None:
    lattice = snap_to_lattice([[0.3, 0.3], [0.3, 0.3]], epsilon=0.25)
    assert tuple(lattice[0]) != tuple(lattice[1])
    assert np.abs(lattice[0] - lattice[1]).sum() >= 1
    assert tuple(lattice[0]) == (1, 1)


def test_single_edge_qubit_sits_at_its_midpoint() -> None:
    x = simplex(1)
    embedded = gg_embed(x, EmbedParams(n=2))
    code = code_from_complex(x, 1)
    placement = placement_from_embedding(code, embedded, x, 1)
    assert placement.points == ((0, 0),)
    assert placement.scale == 0.25


def test_hexagon_placement_is_injective() -> None:
    x = cycle(6)
    params = EmbedParams(n=2, delta=0.5)
    embedded = gg_embed(x, params)
    code = code_from_complex(x, 1)
    placement = placement_from_embedding(code, embedded, x, 1)
    certificate = certify_local(code, placement)
    assert certificate.injective
    assert placement.array().min() == 0
    # neighbouring barycenters are at most one subdivided edge apart, each snapped by at most 1
    reach = math.sqrt(2) * (embedded.subdivision_factor + 3) / placement.scale
    assert certificate.check_constant <= reach + 1


def test_placement_rejects_wrong_code() -> None:
    x = cycle(6)
    embedded = gg_embed(x, EmbedParams(n=2, delta=0.5))
    with pytest.raises(ShapeMismatch):
        placement_from_embedding(toric_code(2, 3), embedded, x, 1)


# ------------------------------------------------------------------- padding
def test_serpentine_steps_are_unit() -> None:
    walk = list(serpentine((3, 4)))
    assert len(walk) == len(set(walk)) == 12
    for a, b in zip(walk, walk[1:]):
        assert sum(abs(p - q) for p, q in zip(a, b)) == 1


def test_path_block_has_no_logicals() -> None:
    result = report(path_block(12))
    assert result.dim == 0
    assert result.d == math.inf


def test_padding_to_current_size_is_a_no_op() -> None:
    placement = fold_torus(2, 3)
    code, padded = pad_code(placement.code, placement, placement.code.size)
    assert code is placement.code
    assert padded is placement


@pytest.mark.parametrize("target", [50, 100])
def test_padding_preserves_the_code(target: int) -> None:
    placement = fold_torus(2, 3)
    code, padded = pad_code(placement.code, placement, target)
    assert code.size == target
    result = report(code)
    assert (result.dim, result.d_x, result.d_z) == (2, 3, 3)
    assert result.exact
    certificate = certify_local(code, padded)
    assert certificate.injective
    original = certify_local(placement.code, placement)
    assert certificate.check_constant <= max(original.check_constant, 2)


def test_pad_only_block() -> None:
    empty = empty_code()
    code, placement = pad_code(empty, Placement(empty, (), 2), 20)
    result = report(code)
    assert result.dim == 0
    assert result.x_search.witness is None and result.z_search.witness is None
    assert certify_local(code, placement).injective


def test_cube_too_small() -> None:
    placement = fold_torus(2, 3)
    with pytest.raises(CubeTooSmall):
        pad_code(placement.code, placement, 10_000, cube_factor=0.1)


def test_pad_points_stay_in_the_cube() -> None:
    placement = fold_torus(2, 4)
    code, padded = pad_code(placement.code, placement, 200)
    side = math.ceil(2 * 200 ** 0.5)
    points = padded.array()
    assert points.max() < side
    assert len({tuple(p) for p in points}) == code.size
    fresh = points[placement.code.size :]
    assert fresh[:, 0].min() > placement.array()[:, 0].max()
    for a, b in itertools.pairwise(fresh.tolist()):
        assert sum(abs(p - q) for p, q in zip(a, b)) == 1
