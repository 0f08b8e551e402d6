import json
import os
import shutil
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("CYLOP_CLI", "cylop")
if shutil.which(CLI) is None:
    pytest.skip("cylop executable not found", allow_module_level=True)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(*args):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, timeout=600)


def fx(name):
    return FIXTURES / name


def test_validate_builtin():
    r = run("validate", "cocom:3")
    assert r.returncode == 0, r.stderr
    out = json.loads(r.stdout)
    assert out["ok"] and out["arity_cap"] == 3


def test_validate_file_and_cap():
    assert run("validate", fx("cocom3.json")).returncode == 0
    out = json.loads(run("validate", "cocom:4", "--cap", "2").stdout)
    assert out["arity_cap"] == 2


def test_validate_planted_failure_is_located():
    r = run("validate", fx("cocom3_planted.json"), "--format", "text")
    assert r.returncode == 1
    assert "nu3" in r.stdout


def test_cohomology_ranks():
    out = json.loads(run("cohomology", "cocom:3", 3).stdout)
    cobar = out["tables"][0]
    assert sum(row["rank"] for row in cobar["ranks"]) == 2
    assert run("cohomology", "cocom:3", 7).returncode == 2


def test_lift_and_input_errors():
    r = run("lift", "cocom_eps:3", "--seed", 4)
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["report"]["ok"]
    assert run("lift", "cocom:3", fx("zero_derivation.json")).returncode == 0
    bad = run("lift", "cocom_eps:4", fx("cocom_eps4_nonclosed_derivation.json"))
    assert bad.returncode == 2
    assert "closed" in bad.stderr


def test_transport_certificate():
    r = run("transport", "cocom_eps:3", fx("cocom_eps3_triple.json"), fx("cocom_eps3_derivation.json"))
    assert r.returncode == 0, r.stderr
    cert = json.loads(r.stdout)["certificate"]
    assert cert["green"] and "output" in cert
    planted = run("transport", "cocom_eps:3", fx("cocom_eps3_planted_triple.json"))
    assert planted.returncode == 2
    assert "eps2" in planted.stderr


def test_mc_check():
    assert run("mc-check", "cocom_eps:3", fx("cocom_eps3_cobar_structure.json")).returncode == 0
    assert run("mc-check", "cocom:3", fx("zero_element.json")).returncode == 0
    r = run("mc-check", "cocom_eps:3", fx("cocom_eps3_planted_triple.json"), "--format", "text")
    assert r.returncode == 1
    assert "arity 2" in r.stdout


def test_output_file_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run("lift", "cocom_eps:4", "--seed", 9, "--out", p).returncode == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("args", [["validate"], ["frobnicate", "cocom:3"], ["validate", "nosuch:3"],
                                  ["validate", "cocom:3", "--format", "xml"]])
def test_usage_errors(args):
    assert run(*args).returncode == 2
