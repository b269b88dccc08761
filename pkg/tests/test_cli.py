import json
import subprocess
import sys

import pytest

from ncdiamond import __version__
from ncdiamond.cli import main

TOP_KEYS = ["command", "inputs", "verdict", "details", "seed", "version"]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    doc = json.loads(out)
    assert list(doc) == TOP_KEYS
    assert doc["version"] == __version__
    return code, doc, err


# -- nf ---------------------------------------------------------------------------


def test_nf_reduces_to_zero(capsys):
    code, out, _ = run(capsys, "nf", "irving", "y*x*y*x")
    assert code == 0 and out.strip() == "0"


def test_nf_prints_normal_form(capsys):
    code, out, _ = run(capsys, "nf", "irving", "y*x*y + x*y*x")
    assert code == 0 and out.strip() == "x*y*x + x"


def test_nf_parse_error_exits_2(capsys):
    code, _, err = run(capsys, "nf", "irving", "x + @")
    assert code == 2 and err.startswith("error:")


def test_nf_missing_presentation_exits_2(capsys):
    code, _, err = run(capsys, "nf", "does-not-exist", "x")
    assert code == 2 and "error:" in err


def test_nf_step_budget_exits_1(capsys, tmp_path):
    f = tmp_path / "loop.pres"
    f.write_text("field Q\ngens x y\nrule y*x -> x*y\n")
    code, _, err = run(capsys, "nf", str(f), "y*y*y*y*y*x", "--max-steps", "2")
    assert code == 1 and "error:" in err


# -- confluence -------------------------------------------------------------------


def test_confluence_irving(capsys):
    code, doc, _ = run_json(capsys, "confluence", "irving")
    assert code == 0 and doc["verdict"] is True
    d = doc["details"]
    assert d["rules"] == ["x*x -> 0", "y*x*y -> x"]
    assert d["ambiguity_count"] == 2 and d["overall"] is True
    second = d["ambiguities"][1]
    assert second["word"] == "y*x*y*x*y" and second["offset"] == 2
    assert second["trace_a"] == ["x*x*y", "0"]
    assert second["trace_b"] == ["y*x*x", "0"]
    assert second["normal_form_a"] == "0" == second["normal_form_b"]
    assert doc["seed"] is None


def test_confluence_failure_exits_1(capsys):
    code, doc, _ = run_json(capsys, "confluence", "cohnsasiada")
    assert code == 1 and doc["verdict"] is False
    amb = doc["details"]["ambiguities"][0]
    assert amb["resolvable"] is False
    assert {amb["normal_form_a"], amb["normal_form_b"]} == {"x*x*x*y", "y*x*x*x"}


# -- witness ----------------------------------------------------------------------


def test_witness_verdict_and_details(capsys):
    code, doc, _ = run_json(capsys, "witness", "irving")
    assert code == 0 and doc["verdict"] is True
    d = doc["details"]
    assert d["witness"] == {"x": "x", "y": "y", "z": "x*y*x", "a": "y", "b": "y*x"}
    assert all(d["checks"].values())
    assert d["residual_x"] == "0" and d["nf_z"] == "x*y*x"


def test_witness_missing_block_exits_2(capsys):
    code, _, err = run(capsys, "witness", "cohnsasiada")
    assert code == 2 and "witness" in err


# -- identity ---------------------------------------------------------------------


def test_identity_holds_with_seed(capsys):
    code, doc, _ = run_json(
        capsys, "identity", "irving", "--trials", "25", "--max-deg", "3", "--seed", "42"
    )
    assert code == 0 and doc["verdict"] is True
    assert doc["seed"] == 42
    assert doc["inputs"] == {"presentation": "irving", "trials": 25, "max_deg": 3}
    assert doc["details"] == {"holds": True, "trials": 25, "counterexample": None}


def test_identity_counterexample_exits_1(capsys, tmp_path):
    f = tmp_path / "free.pres"
    f.write_text("field Q\ngens x y\n")
    code, doc, _ = run_json(
        capsys, "identity", str(f), "--trials", "30", "--max-deg", "2", "--seed", "7"
    )
    assert code == 1 and doc["verdict"] is False
    cex = doc["details"]["counterexample"]
    assert cex is not None and len(cex["substitution"]) == 6 and cex["value"] != "0"


def test_identity_draws_seed_when_missing(capsys, monkeypatch):
    monkeypatch.delenv("CI_STRICT", raising=False)
    code, doc, _ = run_json(capsys, "identity", "irving", "--trials", "5")
    assert code == 0 and isinstance(doc["seed"], int)


def test_ci_strict_requires_seed(capsys, monkeypatch):
    monkeypatch.setenv("CI_STRICT", "1")
    code, _, err = run(capsys, "identity", "irving", "--trials", "5")
    assert code == 2 and "CI_STRICT" in err
    code, doc, _ = run_json(capsys, "identity", "irving", "--trials", "5", "--seed", "3")
    assert code == 0 and doc["seed"] == 3
    # non-randomized commands are unaffected
    code, _, _ = run(capsys, "witness", "irving")
    assert code == 0


# -- fuzz-rank --------------------------------------------------------------------


@pytest.mark.parametrize("check", ["claim", "master", "intersection"])
def test_fuzz_rank_all_checks(capsys, check):
    code, doc, _ = run_json(
        capsys, "fuzz-rank", "--n", "4", "--trials", "15", "--seed", "1", "--check", check
    )
    assert code == 0 and doc["verdict"] is True
    assert doc["details"]["violations"] == 0
    assert doc["details"]["min_margin"] >= 0
    assert doc["inputs"]["check"] == check and doc["inputs"]["field"] == "Fp:101"


def test_fuzz_rank_over_q_and_zero_trials(capsys):
    code, doc, _ = run_json(
        capsys, "fuzz-rank", "--field", "Q", "--n", "3", "--trials", "10", "--seed", "2"
    )
    assert code == 0 and doc["inputs"]["field"] == "Q"
    code, doc, _ = run_json(capsys, "fuzz-rank", "--trials", "0", "--seed", "2")
    assert code == 0 and doc["details"]["min_margin"] is None


def test_fuzz_rank_bad_field_exits_2(capsys):
    code, _, err = run(capsys, "fuzz-rank", "--field", "Fp:6", "--trials", "1", "--seed", "1")
    assert code == 2 and "error:" in err


# -- probe ------------------------------------------------------------------------


def write_assignment(tmp_path, payload) -> str:
    f = tmp_path / "assign.json"
    f.write_text(json.dumps(payload))
    return str(f)


GOOD_ASSIGN = {"field": "Q", "n": 2, "assign": {"x": [0, 1, 0, 0], "y": [0, 0, 1, 0]}}


def test_probe_frozen_report(capsys, tmp_path):
    path = write_assignment(tmp_path, GOOD_ASSIGN)
    code, doc, _ = run_json(capsys, "probe", "irving", path)
    assert code == 0 and doc["verdict"] is True
    d = doc["details"]
    assert (d["rank_x"], d["rank_z"], d["rank_yz"], d["rank_t"], d["rank_s"]) == (1, 1, 1, 2, 0)
    assert d["margin"] == 2 and d["regime_feasible"] is False
    assert d["alpha_rank_cap"] == "1/2" and d["alpha_defect_floor"] == "4"
    assert d["norm_t"] == "1" and d["field"] == "Q" and d["n"] == 2


@pytest.mark.parametrize(
    "payload",
    [
        [1, 2, 3],                                                    # not an object
        {"n": 2, "assign": {}},                                       # field missing
        {"field": "Q", "assign": {}},                                 # n missing
        {"field": "Q", "n": 2},                                       # assign missing
        {"field": "Q", "n": 0, "assign": {}},                         # bad n
        {"field": "Q", "n": 2, "assign": []},                         # assign not a dict
        {"field": "Q", "n": 2, "assign": {"q": [0, 0, 0, 0]}},        # unknown generator
        {"field": "Q", "n": 2, "assign": {"x": [0, 1, 0]}},           # wrong length
        {"field": "Q", "n": 2, "assign": {"x": [0, 1, 0, "a"]}},      # non-integer entry
        {"field": "Q", "n": 2, "assign": {"x": [0, 1, 0, True]}},     # bool entry
        {"field": "Zp", "n": 2, "assign": {}},                        # unparseable field
    ],
)
def test_probe_malformed_assignment_exits_2(capsys, tmp_path, payload):
    path = write_assignment(tmp_path, payload)
    code, _, err = run(capsys, "probe", "irving", path)
    assert code == 2 and "error:" in err


def test_probe_field_mismatch_exits_2(capsys, tmp_path):
    payload = dict(GOOD_ASSIGN, field="Fp:101")
    path = write_assignment(tmp_path, payload)
    code, _, err = run(capsys, "probe", "irving", path)
    assert code == 2 and "does not match" in err


def test_probe_invalid_json_and_missing_file(capsys, tmp_path):
    f = tmp_path / "broken.json"
    f.write_text("{not json")
    code, _, err = run(capsys, "probe", "irving", str(f))
    assert code == 2 and "error:" in err
    code, _, err = run(capsys, "probe", "irving", str(tmp_path / "nope.json"))
    assert code == 2 and "error:" in err


def test_probe_without_witness_exits_2(capsys, tmp_path):
    path = write_assignment(tmp_path, GOOD_ASSIGN)
    code, _, err = run(capsys, "probe", "cohnsasiada", path)
    assert code == 2 and "witness" in err


# -- series subcommands ---------------------------------------------------------------


def test_series_quasi_inverse_golden(capsys):
    code, doc, _ = run_json(capsys, "series", "quasi-inverse", "x", "--trunc", "3")
    assert code == 0 and doc["verdict"] is True
    d = doc["details"]
    assert d["f"] == "x" and d["g"] == "-x*x*x - x*x - x"
    assert d["gf_equals_f_plus_g"] and d["fg_equals_f_plus_g"] and d["circle_both_ways_zero"]
    assert doc["inputs"] == {"expr": "x", "gens": ["x", "y"], "field": "Q", "trunc": 3}


def test_series_quasi_inverse_other_ring(capsys):
    code, doc, _ = run_json(
        capsys,
        "series", "quasi-inverse", "a*b + b", "--gens", "a,b", "--field", "Fp:7", "--trunc", "4",
    )
    assert code == 0 and doc["inputs"]["gens"] == ["a", "b"]


def test_series_quasi_inverse_rejects_constant_term(capsys):
    code, _, err = run(capsys, "series", "quasi-inverse", "1 + x", "--trunc", "3")
    assert code == 2 and "constant term" in err


def test_series_sfprobe(capsys):
    code, doc, _ = run_json(
        capsys,
        "series", "sfprobe", "--n", "2", "--trunc", "3", "--trials", "4", "--seed", "9",
    )
    assert code == 0 and doc["verdict"] is True
    assert doc["details"] == {
        "n": 2, "trunc": 3, "trials": 4, "all_confirmed": True, "failures": [],
    }


def test_series_sext_demo_builtin(capsys):
    code, doc, _ = run_json(capsys, "series", "sext-demo", "--trunc", "6")
    assert code == 0 and doc["verdict"] is True
    d = doc["details"]
    assert d["coeffs"] == ["1", "2"] and d["f"] == "2*x*y + 3*y"
    assert len(d["steps"]) == 4 and all(s["verified"] for s in d["steps"])
    assert d["steps"][3]["lhs"] == "x*z" and d["steps"][3]["rhs"] == "0"
    assert doc["inputs"]["random"] is False and doc["seed"] is None


def test_series_sext_demo_random(capsys):
    code, doc, _ = run_json(
        capsys,
        "series", "sext-demo", "--random", "--pairs", "3", "--trunc", "4", "--seed", "11",
    )
    assert code == 0 and doc["verdict"] is True
    assert doc["inputs"]["random"] is True and doc["seed"] == 11
    assert doc["details"]["pairs"] == 3 and len(doc["details"]["u"]) == 3
    # a provided seed implies a random draw even without the flag
    code2, doc2, _ = run_json(
        capsys, "series", "sext-demo", "--pairs", "3", "--trunc", "4", "--seed", "11"
    )
    assert doc2["details"] == doc["details"]


def test_series_sext_demo_needs_two_generators(capsys):
    code, _, err = run(capsys, "series", "sext-demo", "--gens", "x")
    assert code == 2 and "two generators" in err


# -- replayability and plumbing ---------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ("identity", "irving", "--trials", "10", "--max-deg", "3", "--seed", "5"),
        ("fuzz-rank", "--n", "4", "--trials", "10", "--seed", "5"),
        ("series", "sfprobe", "--n", "2", "--trunc", "3", "--trials", "3", "--seed", "5"),
        ("series", "sext-demo", "--random", "--trunc", "4", "--seed", "5"),
    ],
)
def test_seeded_runs_are_byte_identical(capsys, argv):
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_pretty_flag(capsys):
    code, out, _ = run(capsys, "confluence", "irving", "--pretty")
    assert code == 0
    assert out.startswith('{\n  "command"')
    assert json.loads(out)["verdict"] is True


def test_version_and_usage_errors(capsys):
    assert main(["--version"]) == 0
    assert "ncdiamond" in capsys.readouterr().out
    assert main([]) == 2
    assert main(["nonsense"]) == 2
    assert main(["series"]) == 2
    capsys.readouterr()


def test_console_entry_points():
    proc = subprocess.run(
        [sys.executable, "-m", "ncdiamond", "--version"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.strip() == f"ncdiamond {__version__}"
    proc = subprocess.run(["ncdiamond", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "confluence" in proc.stdout
