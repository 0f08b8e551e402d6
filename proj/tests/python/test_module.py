import json
from pathlib import Path

import pytest

cylop = pytest.importorskip("cylop")

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load(name):
    return json.loads((FIXTURES / name).read_text())


def test_validate():
    assert cylop.validate("coass:3")["ok"]
    bad = cylop.validate(FIXTURES / "cocom3_planted.json")
    assert not bad["ok"] and "nu3" in bad["text"]


def test_cooperad_round_trip():
    c = cylop.cooperad("cocom:4", cap=3)
    assert c["arity_cap"] == 3
    assert [comp["arity"] for comp in c["components"]][-1] == 3


def test_cohomology():
    out = cylop.cohomology("coass:3", 3)
    assert sum(row["rank"] for row in out["tables"][0]["ranks"]) == 6
    with pytest.raises(cylop.InvalidInput):
        cylop.cohomology("coass:3", 9)


def test_lift_and_transport():
    assert cylop.lift("cocom_eps:3", seed=2)["report"]["ok"]
    with pytest.raises(cylop.InvalidInput, match="closed"):
        cylop.lift("cocom_eps:4", load("cocom_eps4_nonclosed_derivation.json"))
    out = cylop.transport("cocom_eps:3", load("cocom_eps3_triple.json"), load("cocom_eps3_derivation.json"))
    assert out["ok"] and out["certificate"]["green"]


def test_mc_check():
    assert cylop.mc_check("cocom_eps:3", load("cocom_eps3_cobar_structure.json"))["ok"]
    planted = cylop.mc_check("cocom_eps:3", load("cocom_eps3_planted_triple.json"))
    assert not planted["ok"] and "arity 2" in planted["text"]


def test_malformed_json():
    with pytest.raises(ValueError):
        cylop.mc_check("cocom:3", "{not json")
