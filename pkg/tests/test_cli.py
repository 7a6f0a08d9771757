import csv
import json
import subprocess
import sys

import pytest

from mhtkit.cli import main


def _run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bump_verify(capsys):
    code, out, err = _run(["bump-verify"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["config"]["command"] == "bump-verify"
    assert doc["residuals"]["psi_odd"] <= 1e-14
    assert doc["constants"]["phi_sup"] == pytest.approx(1.0)


def test_gowers_constant_prints_one(capsys):
    code, out, _ = _run(["gowers", "--n-domain", "64", "--degree", "3",
                         "--input-kind", "ones"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == pytest.approx(1.0, rel=1e-12)


def test_gowers_small_case_cross_checks_direct(capsys):
    code, out, _ = _run(["gowers", "--n-domain", "12", "--degree", "3",
                         "--input-kind", "random", "--seed", "2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["direct_value"] == pytest.approx(doc["value"], rel=1e-9)


def test_transform_pairing_contract(capsys):
    code, out, _ = _run(["transform", "--k", "2", "--r", "1", "--R", "6",
                         "--n-domain", "20", "--seed", "3"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert len(doc["inputs"]) == 2
    assert doc["output"]["re"]


def test_vn_check_runs_clean(capsys):
    code, out, _ = _run(["vn-check", "--k", "2", "--trials", "6", "--seed",
                         "1"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert len(doc["results"]) == 6
    assert doc["max_ratio"] <= 1.0 + 1e-9


def test_tree_stats_structure(capsys):
    code, out, _ = _run(["tree-stats", "--k", "1", "--n-domain", "48", "--R",
                         "16", "--delta", "0.15", "--seed", "5"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["bad_count"] == len(
        [1 for t in doc["trees"]]) or doc["report"]["bad_count"] >= len(doc["trees"])
    assert doc["report"]["mass_ratio"] >= 0.0


def test_curve_csv_columns_and_bounds(tmp_path, capsys):
    out_file = tmp_path / "curve.csv"
    code, _, _ = _run(["curve", "--ratios", "2,4,8", "--n-domain", "24",
                       "--trials", "8", "--max-iter", "15", "--restarts", "1",
                       "--seed", "6", "--out", str(out_file)], capsys)
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert lines[0].startswith("# config:")
    rows = list(csv.DictReader(lines[1:]))
    assert list(rows[0].keys()) == ["ratio", "lower_bound", "trivial",
                                    "normalized", "method", "seed",
                                    "iterations"]
    for row in rows:
        assert float(row["normalized"]) <= 1.0 + 1e-9
        assert float(row["lower_bound"]) <= float(row["trivial"]) + 1e-9


def test_curve_rerun_byte_identical(tmp_path, capsys):
    args = ["curve", "--ratios", "2,4", "--n-domain", "20", "--trials", "6",
            "--max-iter", "10", "--restarts", "1", "--seed", "8"]
    f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert _run(args + ["--out", str(f1)], capsys)[0] == 0
    assert _run(args + ["--out", str(f2)], capsys)[0] == 0
    a, b = f1.read_bytes(), f2.read_bytes()
    # embedded config contains the out path; strip the header line
    assert a.split(b"\n", 1)[1] == b.split(b"\n", 1)[1]


def test_curve_workers_do_not_change_results(tmp_path, capsys):
    base = ["curve", "--ratios", "2,8", "--n-domain", "20", "--trials", "6",
            "--max-iter", "10", "--restarts", "1", "--seed", "2"]
    f1, f2 = tmp_path / "w1.csv", tmp_path / "w2.csv"
    assert _run(base + ["--workers", "1", "--out", str(f1)], capsys)[0] == 0
    assert _run(base + ["--workers", "2", "--out", str(f2)], capsys)[0] == 0
    tail = lambda p: p.read_text().split("\n", 1)[1]
    assert tail(f1) == tail(f2)


def test_norm_search_reverifiable_output(tmp_path, capsys):
    out_file = tmp_path / "est.json"
    code, _, _ = _run(["norm-search", "--k", "1", "--r", "1", "--R", "5",
                       "--n-domain", "24", "--trials", "2", "--seed", "4",
                       "--out", str(out_file)], capsys)
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert doc["lower_bound"] <= doc["trivial"] + 1e-9
    assert len(doc["extremizers"]) == 2
    assert doc["restart_scores"]
    # independent recomputation from the dumped extremizers
    import numpy as np
    from mhtkit import Signal, TruncationParams, dual_form, lp_norm
    sigs = [Signal(e["offset"], np.array(e["re"]) + 1j * np.array(e["im"]))
            for e in doc["extremizers"]]
    lam = abs(dual_form(sigs, TruncationParams(r=1, R=5, k=1)))
    denom = lp_norm(sigs[0], 2.0) * lp_norm(sigs[1], 2.0)
    assert lam / denom == pytest.approx(doc["lower_bound"], rel=1e-9)


def test_exit_code_two_on_config_errors(capsys):
    assert _run(["gowers", "--degree", "0"], capsys)[0] == 2
    assert _run(["transform", "--r", "5", "--R", "2"], capsys)[0] == 2
    assert _run(["curve", "--tolerance", "nosuch=1"], capsys)[0] == 2
    assert _run(["curve", "--exponents", "2,3"], capsys)[0] == 2


def test_exit_code_one_dumps_violation(capsys):
    code, _, err = _run(["curve", "--ratios", "2", "--n-domain", "16",
                         "--trials", "4", "--max-iter", "8", "--restarts",
                         "1", "--tolerance", "curve_normalized=-0.9"], capsys)
    assert code == 1
    doc = json.loads(err.strip().splitlines()[-1])
    assert "violation" in doc
    assert doc["instance"]["ratio"] == 2.0


def test_config_file_stream(tmp_path, capsys):
    cfg = tmp_path / "runs.yaml"
    cfg.write_text(
        "command: gowers\nn_domain: 16\ndegree: 2\ninput_kind: character\n"
        "frequency: 3\n---\ncommand: vn-check\nk: 1\ntrials: 3\nseed: 11\n")
    code, out, _ = _run(["--config", str(cfg)], capsys)
    assert code == 0
    assert out.count('"command"') == 2


def test_config_file_requires_command(tmp_path, capsys):
    cfg = tmp_path / "bad.yaml"
    cfg.write_text("n_domain: 16\n")
    assert _run(["--config", str(cfg)], capsys)[0] == 2


def test_help_lists_tolerance_defaults():
    out = subprocess.run([sys.executable, "-m", "mhtkit.cli", "--help"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "duality=1e-10" in out.stdout
    assert "vn=1e-09" in out.stdout or "vn=1e-9" in out.stdout
