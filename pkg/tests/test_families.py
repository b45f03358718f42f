from __future__ import annotations

import pytest

from local_codes.core.locality.placement import certify_local
from local_codes.core.topology.code import report
from local_codes.families import (
    CodeFamily,
    FamilyInstance,
    FamilySpec,
    SteaneFamily,
    create_family,
    list_families,
    register_family,
)


def test_builtin_families_are_listed() -> None:
    assert set(list_families()) >= {"toric", "hgp", "steane", "padded", "embedded"}


def test_unknown_family_lists_the_choices() -> None:
    with pytest.raises(ValueError) as info:
        create_family("mobius")
    assert "toric" in str(info.value)


def test_duplicate_registration_is_rejected() -> None:
    with pytest.raises(ValueError):
        register_family(FamilySpec("toric", SteaneFamily))


def test_custom_family_can_be_registered() -> None:
    class FixedSteane(SteaneFamily):
        name = "fixed-steane"

    register_family(FamilySpec("fixed-steane", FixedSteane, "test only"))
    family = create_family("fixed-steane", n=3)
    assert isinstance(family, CodeFamily)
    instance = family.build(1)
    assert instance.n == 3
    assert instance.family == "fixed-steane"


def test_toric_family_matches_the_fold() -> None:
    instance = create_family("toric", n=2).build(4)
    assert isinstance(instance, FamilyInstance)
    assert instance.code.size == 32
    assert instance.parameters == {"L": 4, "k": 1}


def test_hgp_grid_is_local() -> None:
    instance = create_family("hgp", kind="repetition").build(4)
    result = report(instance.code)
    assert (result.size, result.dim, result.d) == (25, 1, 4)
    certificate = certify_local(instance.code, instance.placement)
    assert certificate.injective
    assert certificate.check_constant <= 4


def test_hgp_rejects_unknown_kind() -> None:
    with pytest.raises(ValueError):
        create_family("hgp", kind="hamming")


def test_steane_family() -> None:
    instance = create_family("steane").build(0)
    result = report(instance.code)
    assert (result.size, result.dim, result.d) == (7, 1, 3)
    assert certify_local(instance.code, instance.placement).injective


def test_padded_family_wraps_another() -> None:
    family = create_family("padded", inner="hgp", factor=2.0)
    instance = family.build(3)
    assert instance.code.size == 2 * 13
    assert instance.parameters["inner"] == "hgp"
    assert report(instance.code).dim == 1
    with pytest.raises(ValueError):
        create_family("padded", inner="padded")


def test_embedded_family_places_the_cycle() -> None:
    instance = create_family("embedded", n=2).build(6, seed=7)
    assert instance.code.size == 6
    assert instance.complex is not None
    certificate = certify_local(instance.code, instance.placement)
    assert certificate.injective
    result = report(instance.code)
    assert (result.dim, result.d_x, result.d_z) == (1, 6, 1)


def test_family_describes_itself() -> None:
    family = create_family("toric", n=3, k=2)
    assert family.describe() == "toric(n=3)"
    assert family.to_dict() == {"family": "toric", "n": 3, "k": 2}
