import json

import pytest

import liechains

SL2 = {
    "schema": "liealg/1",
    "field": "Q",
    "dim": 3,
    "basis": ["e", "h", "f"],
    "brackets": [
        {"i": 0, "j": 1, "terms": [[0, "-2"]]},
        {"i": 0, "j": 2, "terms": [[1, "1"]]},
        {"i": 1, "j": 2, "terms": [[2, "-2"]]},
    ],
    "subspaces": {"B": [["1", "0", "0"], ["0", "1", "0"]]},
    "chains": {"borel": ["0", "B", "L"]},
}


def test_sl2_structural():
    alg = liechains.LieAlgebra.from_json(json.dumps(SL2))
    assert alg.dim == 3
    r = alg.invariants(method="structural")
    assert r["schema"] == "report/1"
    assert [r[k]["value"] for k in ("ell", "minmax", "modl", "qil")] == [1, 2, 2, 2]


def test_chain_check():
    alg = liechains.LieAlgebra.from_json(json.dumps(SL2))
    v = alg.check_chain("borel", "modular")
    assert v["holds"]
    with pytest.raises(KeyError):
        alg.check_chain("missing", "maximal")


def test_catalog_lattice():
    alg = liechains.LieAlgebra.from_catalog("l1_gamma(0)", "GF(2)")
    s = alg.lattice_summary()
    assert s["ell"] == 1 and s["qil"] == 3
    again = liechains.LieAlgebra.from_json(alg.to_json())
    assert again.to_json() == alg.to_json()
    assert "witt" in liechains.catalog_families()


def test_bad_input():
    bad = dict(SL2, brackets=[{"i": 1, "j": 1, "terms": []}])
    with pytest.raises(ValueError):
        liechains.LieAlgebra.from_json(json.dumps(bad))


def test_verify():
    r = liechains.verify(["nonsplit-sum"])
    assert r["summary"]["fail"] == 0
    assert "engine-agreement" in liechains.suite_names()
