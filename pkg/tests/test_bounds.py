from __future__ import annotations

import csv
import io
import json
import math

import pytest

from local_codes.core.locality.bounds import BoundThresholds, check_bounds, distance_ratio, tradeoff_ratio
from local_codes.core.locality.placement import Placement, certify_local, fold_torus, pad_code, path_block
from local_codes.core.locality.survey import COLUMNS, SurveyTable, SweepParams, frontier_survey, parse_sizes
from local_codes.families import create_family


@pytest.mark.parametrize("side", [3, 4, 5])
def test_folded_toric_ratios(side: int) -> None:
    placement = fold_torus(2, side)
    bound = check_bounds(placement.code, certify_local(placement.code, placement))
    assert bound.exact
    assert bound.d == side
    assert bound.distance_ratio == pytest.approx(1 / math.sqrt(2), abs=1e-9)
    assert bound.tradeoff_ratio == pytest.approx(1.0, abs=1e-12)
    assert bound.passes
    assert bound.label == "exact"


def test_dim_zero_passes_vacuously() -> None:
    code = path_block(30)
    placement = Placement(code, tuple((i, 0) for i in range(30)), 2)
    bound = check_bounds(code, certify_local(code, placement))
    assert bound.dim == 0
    assert bound.tradeoff_ratio == 0.0
    assert bound.passes
    assert bound.label == "vacuous"
    assert bound.to_dict()["d"] == "infinity"


def test_padded_code_stays_under_the_bounds() -> None:
    placement = fold_torus(2, 3)
    code, padded = pad_code(placement.code, placement, 100)
    bound = check_bounds(code, certify_local(code, padded))
    assert bound.distance_ratio == pytest.approx(3 / 10)
    assert bound.tradeoff_ratio == pytest.approx(2 * 9 / 100)
    assert bound.passes


def test_tight_thresholds_fail_in_band() -> None:
    placement = fold_torus(2, 4)
    bound = check_bounds(
        placement.code, certify_local(placement.code, placement), BoundThresholds(distance=0.5, tradeoff=0.5)
    )
    assert not bound.distance_passes
    assert not bound.tradeoff_passes
    assert bound.to_dict()["passes"] == {"distance": False, "tradeoff": False}


def test_ratio_helpers() -> None:
    assert distance_ratio(4, 64, 3) == pytest.approx(4 / 16)
    assert tradeoff_ratio(3, 4, 64, 3) == pytest.approx(3 * 4 / 64)
    assert distance_ratio(math.inf, 10, 2) == 0.0
    assert tradeoff_ratio(0, 5, 10, 2) == 0.0


# -------------------------------------------------------------------- survey
def test_parse_sizes() -> None:
    assert parse_sizes("3..6") == (3, 4, 5, 6)
    assert parse_sizes("3,5, 8") == (3, 5, 8)
    assert parse_sizes("2..3,9") == (2, 3, 9)
    assert parse_sizes("") == ()


def test_empty_sweep_is_header_only() -> None:
    table = frontier_survey(create_family("toric"), SweepParams())
    assert table.rows == []
    lines = table.to_csv().splitlines()
    assert lines[0] == "# format_version=1"
    assert lines[1].split(",") == list(COLUMNS)
    assert len(lines) == 2


def test_toric_survey_passes_everywhere() -> None:
    table = frontier_survey(create_family("toric", n=2), SweepParams(sizes=parse_sizes("3..16")))
    assert len(table.rows) == 14
    assert table.all_pass
    assert [row["L"] for row in table.rows] == list(range(3, 17))
    assert all(row["injective"] and row["d_exact"] for row in table.rows)
    assert {row["check_constant"] for row in table.rows} <= set(range(9))


def test_survey_output_is_reproducible() -> None:
    sweep = SweepParams(sizes=(3, 4), seed=5)
    first = frontier_survey(create_family("hgp"), sweep)
    second = frontier_survey(create_family("hgp"), sweep)
    assert first.to_csv() == second.to_csv()
    rows = list(csv.reader(io.StringIO(first.to_csv())))[2:]
    assert [row[-1] for row in rows] == ["5", "5"]
    assert [row[COLUMNS.index("runtime")] for row in rows] == ["0.0", "0.0"]


def test_parallel_survey_keeps_row_order() -> None:
    sequential = frontier_survey(create_family("toric"), SweepParams(sizes=(5, 3, 4)))
    parallel = frontier_survey(create_family("toric"), SweepParams(sizes=(5, 3, 4), workers=3))
    assert sequential.to_dict() == parallel.to_dict()


def test_survey_json_mirror(tmp_path) -> None:
    table = frontier_survey(create_family("padded"), SweepParams(sizes=(3,)))
    target = tmp_path / "survey.json"
    table.write(target, "json")
    payload = json.loads(target.read_text())
    assert payload["format_version"] == 1
    assert payload["columns"] == list(COLUMNS)
    assert payload["rows"][0]["V"] == 72
    with pytest.raises(ValueError):
        table.write(tmp_path / "survey.txt", "xml")


def test_sweep_params_round_trip() -> None:
    sweep = SweepParams(sizes=(3, 4), seed=9, thresholds=BoundThresholds(2, 3), workers=2)
    assert SweepParams.from_dict(sweep.to_dict()) == sweep


def test_survey_table_defaults() -> None:
    table = SurveyTable()
    assert table.all_pass
    assert table.to_dict() == {"format_version": 1, "columns": list(COLUMNS), "rows": []}
