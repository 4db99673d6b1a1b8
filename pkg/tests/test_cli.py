import io
import json
import os
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from helpers import FIXTURES
from frattini.cli import run

REPORT_SCHEMA = json.loads(resources.files("frattini").joinpath("schemas/report.schema.json").read_text())
WITNESS_SCHEMA = json.loads(resources.files("frattini").joinpath("schemas/witness.schema.json").read_text())


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def cli_json(*argv):
    code, out, err = cli(*argv, "--json")
    assert code == 0, err
    report = json.loads(out)
    jsonschema.validate(report, REPORT_SCHEMA)
    return report


@pytest.mark.parametrize("argv, value", [
    (["iota", "Q8"], 2), (["iota", "D12", "--formula"], 3), (["iota-hat", "F7"], 3),
    (["iota-hat", "F5"], "infinity"), (["iota-hat", "Z12"], 2), (["iota", "Z2"], 1),
])
def test_invariant_values(argv, value):
    r = cli_json(*argv)
    assert r["result"]["value"] == value
    assert r["command"] == argv[0] and r["group"] == argv[1]


def test_formula_method_reported():
    r = cli_json("iota", "D12", "--formula")
    assert r["result"]["method"] == "formula"
    r = cli_json("iota-hat", "F7", "--formula")
    assert r["result"]["value"] == 3
    r = cli_json("iota-hat", "F13", "--formula")
    assert r["result"]["value"] == "infinity"


def test_formula_upper_bound_for_large_symmetric():
    code, out, _ = cli("iota", "S11", "--formula")
    assert code == 0 and "<= 4" in out


def test_formula_not_applicable():
    code, _, err = cli("iota", "A5", "--formula")
    assert code == 2 and "closed form" in err


def test_text_output():
    code, out, _ = cli("iota", "Q8")
    assert code == 0 and out.startswith("iota(Q8) = 2")
    code, out, _ = cli("iota-hat", "F5")
    assert "infinity" in out


def test_maximals():
    r = cli_json("maximals", "Q8")
    classes = r["result"]["classes"]
    assert len(classes) == 3 and all(c["class_size"] == 1 for c in classes)
    r = cli_json("maximals", "F7")
    assert sorted(c["class_size"] for c in r["result"]["classes"]) == [1, 1, 7]
    assert r["result"]["frattini_order"] == 1


def test_frattini():
    r = cli_json("frattini", "Q8")
    assert r["result"]["frattini"]["order"] == 2


@pytest.mark.parametrize("argv, code", [
    (["iota", "S99"], 3), (["maximals", "Z1"], 2), (["iota", "S7x"], 2), (["iota", "K7"], 2),
    (["iota", "D4"], 2), (["iota", "D4", "--allow-degenerate"], 0), (["iota", "S6", "--lattice-bound", "100"], 3),
    (["frobnicate"], 2), (["table", "sn", "--max", "17"], 3), (["table", "sn", "--min", "1"], 2),
])
def test_exit_codes(argv, code):
    assert cli(*argv)[0] == code


def test_parse_error_names_position():
    code, _, err = cli("iota", "A5xQ")
    assert code == 2 and "position 5" in err


def test_timeout_exit_code():
    assert cli("iota", "S7", "--timeout", "0.2")[0] == 3


def test_verify_fixtures():
    r = cli_json("verify", "S11", str(FIXTURES / "s11_alpha_beta.json"))
    fam = r["result"]["family"]
    assert fam["size"] == 4 and fam["all_checks_pass"] and fam["checks"]["intersection_order"] == 1
    assert r["result"]["upper_bound"] == 4


def test_verify_inconjugacy_flag():
    path = str(FIXTURES / "z7z6_conjugate_pair.json")
    r = cli_json("verify", "F7", path, "--inconjugate")
    assert r["result"]["family"]["checks"]["pairwise_inconjugate"] is False
    assert r["result"]["upper_bound"] is None
    assert cli_json("verify", "F7", path)["result"]["upper_bound"] == 2


def test_verify_bad_generator_exit_4():
    code, _, err = cli("verify", "A7", str(FIXTURES / "s7_bad_generator.json"))
    assert code == 4 and "(1,2)" in err and "subgroup 1" in err


def test_verify_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli("verify", "S5", str(bad))[0] == 4
    bad.write_text(json.dumps({"degree": 6, "subgroups": [[[[1, 2]]]]}))
    assert cli("verify", "S5", str(bad))[0] == 4
    bad.write_text(json.dumps({"degree": 5, "subgroups": [[[[1, 9]]]]}))
    assert cli("verify", "S5", str(bad))[0] == 4
    bad.write_text(json.dumps({"degree": 3, "parent": [[[1, 2]]], "subgroups": [[[[1, 2]]]]}))
    assert cli("verify", "S3", str(bad))[0] == 4
    assert cli("verify", "S5", str(tmp_path / "missing.json"))[0] == 4


@pytest.mark.slow
def test_verify_index_bound_flag():
    path = str(FIXTURES / "s11_pair.json")
    assert cli("verify", "S11", path)[0] == 3
    r = cli_json("verify", "S11", path, "--index-bound", "362880")
    assert r["result"]["upper_bound"] == 2


def test_table_sn_rows():
    r = cli_json("table", "sn", "--max", "7")
    rows = {row["n"]: row for row in r["result"]["rows"]}
    assert (rows[7]["bound"], rows[7]["iota"]) == (3, 2)
    assert (rows[2]["bound"], rows[2]["iota"]) == (2, 1)
    assert all(row["exact"] for row in rows.values())


def test_table_sn_upper_bound_annotation():
    code, out, _ = cli("table", "sn", "--min", "8", "--max", "8")
    assert code == 0 and "≤ 3" in out
    r = cli_json("table", "sn", "--min", "8", "--max", "8")
    row = r["result"]["rows"][0]
    assert row["display"] == "≤ 3" and row["upper_bound"] == 3 and row["exact"] is False


def test_table_dihedral_row():
    r = cli_json("table", "dihedral", "--max", "8")
    row = [x for x in r["result"]["rows"] if x["n"] == 6][0]
    assert (row["n"], row["formula"], row["iota"], row["status"]) == (6, 3, 3, "ok")


def test_timing_only_on_request():
    assert "timing" not in cli_json("iota", "Q8")
    assert "seconds" in cli_json("iota", "Q8", "--timing")["timing"]


def test_env_fallback(monkeypatch):
    monkeypatch.setenv("FRATTINI_LATTICE_BOUND", "100")
    assert cli("iota", "S5")[0] == 3
    assert cli("iota", "S5", "--lattice-bound", "200")[0] == 0
    monkeypatch.setenv("FRATTINI_SEED", "7")
    assert cli_json("iota", "Q8")["config"]["seed"] == 7
    monkeypatch.setenv("FRATTINI_SEED", "x")
    assert cli("iota", "Q8")[0] == 2


@pytest.mark.parametrize("name", sorted(p.name for p in FIXTURES.glob("*.json")))
def test_fixtures_match_witness_schema(name):
    jsonschema.validate(json.loads((FIXTURES / name).read_text()), WITNESS_SCHEMA)


def _subprocess(argv, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    return subprocess.run([sys.executable, "-m", "frattini", *argv], capture_output=True, env=env, check=True).stdout


@pytest.mark.parametrize("argv", [["iota", "S4", "--json"], ["iota-hat", "F7", "--json"],
                                  ["table", "sn", "--min", "8", "--max", "8", "--json"]])
def test_byte_identical_across_processes(argv):
    assert _subprocess(argv, 1) == _subprocess(argv, 2)


def test_console_script_installed():
    out = subprocess.run(["frattini", "--version"], capture_output=True, text=True, check=True).stdout
    assert out.startswith("frattini ")
