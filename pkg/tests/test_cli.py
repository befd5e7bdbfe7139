"""End-to-end tests of the command-line interface, run in process through
:func:`knnlab.cli.main`.
"""

from __future__ import annotations

import hashlib
import json

import pytest

from knnlab.cli import main


def _sha256(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------


def test_constants_requires_a_coefficient(capsys):
    assert main(["constants"]) == 2


def test_constants_prints_table_and_json(capsys):
    assert main(["constants", "--c", "0.9684", "--n", "10000"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("c ")
    for name in ("c_minus", "c_plus", "d", "r", "R", "separation"):
        assert name in out
    blob = json.loads(out[out.index("{"):])
    assert blob["c"] == 0.9684
    assert blob["n"] == 10000.0
    assert blob["r"] is not None


def test_constants_writes_file_and_manifest(tmp_path, capsys):
    out = tmp_path / "consts.json"
    assert main(["constants", "--c", "1.0", "--out", str(out)]) == 0
    blob = json.loads(out.read_text())
    assert blob["c"] == 1.0
    manifest = json.loads((tmp_path / "run_manifest_constants.json").read_text())
    assert manifest["command"] == "constants"
    assert manifest["outputs"]["consts.json"] == _sha256(out)
    assert manifest["config"]["c"] == 1.0
    assert "config" not in manifest["config"]


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_rejects_invalid_steps(tmp_path, capsys):
    assert main(["verify", "--step", "0.5",
                 "--out-dir", str(tmp_path)]) == 2
    assert "census step" in capsys.readouterr().err
    # 1 / 0.003 is not an integer, so the unit square does not tile.
    assert main(["verify", "--step", "0.003",
                 "--out-dir", str(tmp_path)]) == 2
    # 0.02 tiles, but the command-line cap is 0.01.
    assert main(["verify", "--step", "0.02",
                 "--out-dir", str(tmp_path)]) == 2
    assert "at most 0.01" in capsys.readouterr().err


def test_verify_single_family_writes_certificate(tmp_path, capsys):
    # The coarsest accepted grid undershoots the certified bound, so the
    # run completes but reports an honest FAIL.
    code = main(["verify", "--step", "0.01", "--which", "lplus",
                 "--out-dir", str(tmp_path)])
    assert code == 1
    out = capsys.readouterr().out
    assert "lplus" in out and "FAIL" in out
    cert = json.loads((tmp_path / "lplus_0.01.json").read_text())
    assert set(cert) == {"name", "step", "computed", "target", "comparator",
                        "witness", "passed", "config_hash"}
    assert cert["name"] == "lplus"
    assert cert["step"] == 0.01
    assert cert["comparator"] == ">="
    assert cert["target"] == 0.3411
    assert cert["passed"] is False
    assert 0.25 < cert["computed"] < 0.3411
    manifest = json.loads((tmp_path / "run_manifest_verify.json").read_text())
    assert manifest["outputs"]["lplus_0.01.json"] == _sha256(
        tmp_path / "lplus_0.01.json")


def test_verify_all_writes_five_certificates(tmp_path, capsys):
    code = main(["verify", "--step", "0.01", "--which", "all",
                 "--out-dir", str(tmp_path)])
    assert code == 1
    names = {p.name for p in tmp_path.glob("*_0.01.json")}
    assert names == {"lplus_0.01.json", "lminus_0.01.json",
                     "hplus_0.01.json", "hminus_0.01.json",
                     "ratio_0.01.json"}
    ratio = json.loads((tmp_path / "ratio_0.01.json").read_text())
    parts = {name: json.loads((tmp_path / ("%s_0.01.json" % name)).read_text())
             for name in ("lplus", "lminus", "hplus", "hminus")}
    occupied = parts["hplus"]["computed"] + parts["hminus"]["computed"]
    total = occupied + parts["lplus"]["computed"] + parts["lminus"]["computed"]
    assert ratio["computed"] == pytest.approx(occupied / total, rel=1e-15)
    assert ratio["target"] == 0.2446
    manifest = json.loads((tmp_path / "run_manifest_verify.json").read_text())
    assert len(manifest["outputs"]) == 5


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

_SIM_ARGS = ["simulate", "--n", "250", "--trials", "2", "--c", "1.0",
             "--seed", "3"]
_HEADER = ("n,k,c,model,trials,connected_frac,wilson_lo,wilson_hi,"
           "mean_components,max_small_component,crossing_pairs_total,seed")


def test_simulate_emits_csv_with_exact_columns(capsys):
    assert main(_SIM_ARGS) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0] == _HEADER
    assert len(lines) == 2
    cells = lines[1].split(",")
    assert cells[0] == "250"
    assert cells[3] == "mutual"
    assert cells[4] == "2"
    assert cells[11] == "3"
    assert out.endswith("\n")


def test_simulate_is_deterministic(capsys):
    assert main(_SIM_ARGS) == 0
    first = capsys.readouterr().out
    assert main(_SIM_ARGS) == 0
    assert capsys.readouterr().out == first


def test_simulate_c_shorthand_matches_range_form(capsys):
    assert main(_SIM_ARGS) == 0
    short = capsys.readouterr().out
    assert main(["simulate", "--n", "250", "--trials", "2", "--c-min", "1.0",
                 "--c-max", "1.0", "--seed", "3"]) == 0
    assert capsys.readouterr().out == short


def test_simulate_range_produces_one_row_per_coefficient(capsys):
    assert main(["simulate", "--n", "150", "--trials", "1", "--c-min", "0.4",
                 "--c-max", "0.8", "--c-step", "0.2", "--seed", "0"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4
    assert [row.split(",")[2] for row in lines[1:]] == [
        "0.40000000000000002", "0.60000000000000009", "0.80000000000000004"]


def test_simulate_out_file_matches_stdout(tmp_path, capsys):
    assert main(_SIM_ARGS) == 0
    stdout_text = capsys.readouterr().out
    out = tmp_path / "sweep.csv"
    assert main(_SIM_ARGS + ["--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert out.read_text() == stdout_text
    manifest = json.loads((tmp_path / "run_manifest_simulate.json").read_text())
    assert manifest["command"] == "simulate"
    assert manifest["outputs"]["sweep.csv"] == _sha256(out)
    assert manifest["seed"] == 3
    assert isinstance(manifest["runtime_ms"], float)
    assert manifest["started"].endswith("+00:00")


def test_simulate_rejects_bad_usage(capsys):
    assert main(["simulate", "--n", "100", "--model", "voronoi"]) == 2
    assert main(["simulate", "--n", "100", "--c", "1.0", "--trials", "0"]) == 2
    assert main(["simulate", "--n", "100"]) == 2
    assert "provide --c" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


def test_check_clean_run_reports_no_violations(capsys):
    code = main(["check", "--n", "150", "--c", "1.0", "--trials", "3",
                 "--samples", "25", "--seed", "0"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["deterministic_violations"] == 0
    assert report["half_disk_violations"] == 0
    assert report["farapart_violations"] == 0
    assert report["intersect_union_failures"] == 0
    assert report["intersect_union_sampled"] == 3 * 25
    assert report["first_violation"] is None
    assert report["injected_bug"] is None
    assert 0.0 <= report["good_wilson_lo"] <= report["good_fraction"] \
        <= report["good_wilson_hi"] <= 1.0
    assert report["k"] == 6


def test_check_injected_bug_is_caught(capsys):
    code = main(["check", "--n", "150", "--c", "1.0", "--trials", "2",
                 "--samples", "10", "--seed", "0", "--inject-bug"])
    assert code == 1
    report = json.loads(capsys.readouterr().out)
    assert report["half_disk_violations"] >= 1
    assert report["deterministic_violations"] >= 1
    x, y, z = report["injected_bug"]
    assert report["first_violation"]["kind"] == "half_disk"
    assert report["first_violation"]["trial"] == 0
    assert report["first_violation"]["witness"][0] in (x, y)


def test_check_out_file_and_manifest(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["check", "--n", "150", "--c", "1.0", "--trials", "1",
                 "--samples", "5", "--seed", "1", "--out", str(out)])
    assert code == 0
    assert capsys.readouterr().out == ""
    report = json.loads(out.read_text())
    assert report["trials"] == 1
    manifest = json.loads((tmp_path / "run_manifest_check.json").read_text())
    assert manifest["outputs"]["report.json"] == _sha256(out)


# ---------------------------------------------------------------------------
# config files, precedence, environment
# ---------------------------------------------------------------------------


def test_config_file_matches_equivalent_flags(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# connectivity sweep\nn = 250\ntrials = 2\nc = 1.0\n"
                   "seed = 3\n")
    assert main(_SIM_ARGS) == 0
    from_flags = capsys.readouterr().out
    assert main(["simulate", "--config", str(cfg)]) == 0
    assert capsys.readouterr().out == from_flags


def test_flags_override_config_values(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n = 250\ntrials = 2\nc = 1.0\nseed = 3\n")
    assert main(["simulate", "--config", str(cfg), "--trials", "1"]) == 0
    row = capsys.readouterr().out.splitlines()[1]
    assert row.split(",")[4] == "1"


def test_unknown_config_key_is_rejected(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n = 250\nbogus = 5\n")
    assert main(["simulate", "--config", str(cfg)]) == 2
    assert "bogus" in capsys.readouterr().err


def test_threads_environment_default(tmp_path, monkeypatch):
    monkeypatch.setenv("KNNLAB_THREADS", "7")
    out = tmp_path / "consts.json"
    assert main(["constants", "--c", "1.0", "--out", str(out)]) == 0
    manifest = json.loads((tmp_path / "run_manifest_constants.json").read_text())
    assert manifest["config"]["threads"] == 7


def test_unknown_subcommand_exits_with_usage_error(capsys):
    assert main(["frobnicate"]) == 2
    assert main([]) == 2
