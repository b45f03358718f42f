from __future__ import annotations

import io
import json
from pathlib import Path
from typing import Any, Dict, List, Tuple

import pytest

from local_codes import __version__
from local_codes.cli.commands import Command, CommandRegistry, CommandResult, parse_classical
from local_codes.cli.main import main
from local_codes.core.topology.code import CssCode
from local_codes.core.topology.complex import CellComplex


def run(*argv: str) -> Tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    status = main(list(argv), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


def run_to(path: Path, *argv: str) -> Dict[str, Any]:
    status, _, err = run(*argv, "-o", str(path))
    assert status == 0, err
    return json.loads(path.read_text())


def test_gen_toric(tmp_path: Path) -> None:
    payload = run_to(tmp_path / "toric.json", "gen", "toric", "--n", "2", "--L", "3")
    assert payload["kind"] == "code"
    assert payload["version"] == __version__
    assert payload["seed"] == 7
    assert payload["params"]["L"] == 3
    assert CssCode.from_dict(payload["result"]).size == 18


def test_gen_torus_complex_is_valid(tmp_path: Path) -> None:
    payload = run_to(tmp_path / "torus.json", "gen", "torus-complex", "--n", "2", "--L", "3")
    x = CellComplex.from_dict(payload["result"])
    assert x.cells == (9, 18, 9)
    assert x.chain_condition_holds()


def test_gen_hypergraph_product(tmp_path: Path) -> None:
    target = tmp_path / "hgp.json"
    run_to(target, "gen", "hgp", "--a", "repetition:4", "--b", "repetition:4")
    report = run_to(tmp_path / "report.json", "report", str(target))
    assert report["result"]["size"] == 25
    assert report["result"]["dim"] == 1
    assert report["result"]["d"] == 4


def test_report_toric_end_to_end(tmp_path: Path) -> None:
    code = tmp_path / "toric.json"
    run_to(code, "gen", "toric", "--L", "4")
    payload = run_to(tmp_path / "report.json", "report", str(code))
    result = payload["result"]
    assert (result["size"], result["dim"], result["d"]) == (32, 2, 4)
    assert result["exact"] == {"d_x": True, "d_z": True}


def test_fold_then_certify(tmp_path: Path) -> None:
    placement = tmp_path / "fold.json"
    run_to(placement, "fold", "--n", "2", "--L", "8")
    payload = run_to(tmp_path / "cert.json", "certify", str(placement))
    assert payload["kind"] == "certificate"
    assert payload["result"]["injective"] is True
    assert payload["result"]["check_constant"] <= 8


def test_certify_with_separate_code(tmp_path: Path) -> None:
    placement = tmp_path / "fold.json"
    payload = run_to(placement, "fold", "--L", "3")
    bare = tmp_path / "points.json"
    bare.write_text(json.dumps(payload["result"]["placement"]))
    code = tmp_path / "code.json"
    code.write_text(json.dumps(payload["result"]["code"]))
    status, _, err = run("certify", str(bare))
    assert status == 2 and "--code" in err
    result = run_to(tmp_path / "cert.json", "certify", str(bare), "--code", str(code))
    assert result["result"]["injective"] is True


def test_pad_then_verify_bounds(tmp_path: Path) -> None:
    placement = tmp_path / "fold.json"
    padded = tmp_path / "padded.json"
    run_to(placement, "fold", "--L", "3")
    run_to(padded, "pad", str(placement), "--target", "50")
    payload = run_to(tmp_path / "bounds.json", "verify-bounds", str(padded))
    result = payload["result"]
    assert result["V"] == 50
    assert (result["dim"], result["d"]) == (2, 3)
    assert result["passes"] == {"distance": True, "tradeoff": True}


def test_survey_csv_rows(tmp_path: Path) -> None:
    target = tmp_path / "survey.csv"
    status, _, err = run("survey", "toric", "--n", "2", "--L", "3..6", "--format", "csv", "-o", str(target))
    assert status == 0, err
    lines = target.read_text().splitlines()
    assert lines[0] == f"# local_codes {__version__} seed=7"
    assert lines[1] == "# format_version=1"
    assert lines[2].startswith("family,n,L,V,")
    assert len(lines[3:]) == 4


def test_survey_json_records_sweep(tmp_path: Path) -> None:
    payload = run_to(tmp_path / "survey.json", "survey", "hgp", "--L", "3,4", "--seed", "3")
    assert payload["seed"] == 3
    assert payload["params"]["sweep"]["sizes"] == [3, 4]
    assert [row["seed"] for row in payload["result"]["rows"]] == [3, 3]


def test_outputs_are_byte_identical(tmp_path: Path) -> None:
    for name in ("a.json", "b.json"):
        run_to(tmp_path / name, "survey", "padded", "--L", "3", "--seed", "11")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_embed_and_recheck(tmp_path: Path) -> None:
    complex_file = tmp_path / "cycle.json"
    embedding = tmp_path / "embedding.json"
    run_to(complex_file, "gen", "cycle", "--L", "8")
    params = tmp_path / "params.json"
    params.write_text(json.dumps({"delta": 0.5}))
    payload = run_to(embedding, "embed", str(complex_file), "--n", "2", "--params", str(params))
    assert payload["params"]["delta"] == 0.5
    assert payload["params"]["seed"] == 7
    check = run_to(tmp_path / "check.json", "certify", str(embedding), "--embedding")
    assert check["kind"] == "embedding-check"
    assert check["result"]["matches"] is True


def test_missing_file_exits_with_two(tmp_path: Path) -> None:
    status, out, err = run("report", str(tmp_path / "absent.json"))
    assert status == 2
    assert out == ""
    assert "report" in err


def test_bad_json_names_the_line(tmp_path: Path) -> None:
    broken = tmp_path / "broken.json"
    broken.write_text('{\n  "h1": \n')
    status, _, err = run("report", str(broken))
    assert status == 2
    assert "FormatError" in err and "line" in err


def test_bad_parameters_exit_with_two() -> None:
    status, _, err = run("gen", "hgp", "--a", "golay")
    assert status == 2
    assert "golay" in err
    status, _, _ = run("survey", "mobius")
    assert status == 2


def test_parse_classical() -> None:
    assert parse_classical("repetition:5").shape == (4, 5)
    assert parse_classical("cycle:5").shape == (5, 5)
    assert parse_classical("hamming").shape == (3, 7)


def test_registry_rejects_duplicates() -> None:
    registry = CommandRegistry()
    command = Command("noop", "does nothing", lambda config, args: CommandResult("none", {}))
    registry.register(command)
    with pytest.raises(ValueError):
        registry.register(command)
    with pytest.raises(ValueError):
        registry.get("missing")
    names: List[str] = list(registry.names())
    assert names == ["noop"]
    assert "noop: does nothing" in registry.describe()
