import json
import subprocess
import sys
from pathlib import Path

import pytest

from paraslant.cli import main, run_manifest, verify_paper
from paraslant.frame import Sampling

ROOT = Path(__file__).resolve().parents[1]
AW1 = ROOT / "manifests" / "aw1-slant2.json"
BAD = ROOT / "manifests" / "identity-J.json"


def test_analyze_aw1(capsys):
    assert main(["analyze", str(AW1), "--samples", "8", "--format", "json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    classify = {r["subject"]: r["report"] for r in rep["results"] if r["analysis"] == "classify"}
    assert classify["D1"]["type"] == "slant-2" and abs(classify["D1"]["lambda"] - 0.25) < 1e-12
    analyses = [r["analysis"] for r in rep["results"]]
    assert analyses == ["validate", "classify", "classify", "classify", "decompose", "integrability", "geodesy",
                        "curvature", "identities", "cr_check"]
    assert rep["summary"] == {"PASS": 3} and rep["sampling"] == {"count": 8, "seed": 0}


def test_identity_J_exits_2(capsys):
    assert main(["analyze", str(BAD)]) == 2
    assert "Jᵀg+gJ ≠ 0" in capsys.readouterr().err
    assert main(["validate", str(BAD)]) == 2


def test_seed_precedence(monkeypatch):
    monkeypatch.setenv("PARASLANT_SEED", "5")
    assert run_manifest(AW1, {"samples": 2}).sampling["seed"] == 5
    assert run_manifest(AW1, {"samples": 2, "seed": 6}).sampling["seed"] == 6
    monkeypatch.setenv("PARASLANT_SEED", "x")
    assert main(["analyze", str(AW1)]) == 2


def test_out_file_and_csv(tmp_path):
    out = tmp_path / "r.csv"
    assert main(["analyze", str(AW1), "--samples", "4", "--format", "csv", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "entry,analysis,subject,point,lambda,residual,type,theta,outcome"


def test_verify_paper_subset_and_strict():
    rep = verify_paper(["final-half-half", "diecisiete"], Sampling(8, 1))
    assert rep.summary.get("FAIL", 0) == 0 and rep.summary["DISCREPANCY"] > 0
    strict = verify_paper(["diecisiete"], Sampling(8, 1), strict=True)
    assert strict.exit_code == 1 and "DISCREPANCY" not in strict.summary


def test_unknown_ids_and_gallery_commands(capsys, tmp_path):
    assert main(["verify-paper", "nope"]) == 2
    assert main(["gallery", "list"]) == 0
    assert "diecisiete" in capsys.readouterr().out
    out = tmp_path / "e.json"
    assert main(["gallery", "export", "aw1", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["name"] == "aw1" and doc["gallery"]["claims"]
    assert main(["gallery", "export", "zzz"]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "paraslant", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip().startswith("paraslant ")


def test_verify_paper_is_deterministic():
    a = subprocess.run([sys.executable, "-m", "paraslant", "verify-paper", "aw1-hemi", "--seed", "3",
                        "--samples", "8", "--format", "json"], capture_output=True)
    b = subprocess.run([sys.executable, "-m", "paraslant", "verify-paper", "aw1-hemi", "--seed", "3",
                        "--samples", "8", "--format", "json"], capture_output=True)
    assert a.returncode == 0 and a.stdout == b.stdout and a.stdout
