import json
import os
from pathlib import Path

import pytest

import modalpres as mp

FIXTURES = Path(os.environ.get("MODALPRES_FIXTURES", Path(__file__).resolve().parents[2] / "fixtures"))


def load(name):
    return mp.Model.load(str(FIXTURES / name))


def test_unravel_fig1():
    u = mp.unravel(load("fig1.json"), 3)
    assert len(u) == 8
    assert mp.canonical_key(u) == mp.canonical_key(load("fig1_unravel3.json"))


def test_prune_fig4():
    p = mp.prune(load("fig4.json"))
    assert len(p) == 7
    assert mp.canonical_key(p) == mp.canonical_key(load("fig4_pruned.json"))


def test_formula_round_trip_and_check():
    f = mp.Formula.parse("<>(p2 & <><2>p1)")
    assert str(f) == "<>(p2 & <><2>p1)"
    assert f.depth == 3
    assert mp.check(f, load("fig1.json"))
    assert mp.Formula.parse("<2>p").fragments()["EPGML"]


def test_relate_identity():
    m = load("fig1.json")
    w = mp.relate("embed", m, m)
    assert w == {x: x for x in m.worlds}
    assert mp.relate("iso", load("fig4_pruned.json"), load("fig4.json")) is None


def test_synthesis_round_trip():
    gens = [m for m in mp.enumerate_models(["p"], 3) if mp.check(mp.Formula.parse("<2>p"), m)]
    formula, minimal = mp.synthesize(gens, "injhom", 1)
    assert formula.fragments()["EPGML"]
    target = mp.Formula.parse("<2>p")
    for m in mp.enumerate_models(["p"], 3):
        assert mp.check(formula, m) == mp.check(target, m)


def test_gnn_proof_pair():
    net = (FIXTURES / "sum_proof.json").read_text()
    star = mp.gnn_eval(net, (FIXTURES / "star_graph.json").read_text())
    edge = mp.gnn_eval(net, (FIXTURES / "edge_graph.json").read_text())
    assert star["v"] == (True, [["1"], ["3"]])
    assert edge["v'"] == (False, [["1"], ["2"]])
    assert mp.gnn_certified(net)
    assert not mp.gnn_certified((FIXTURES / "mean_net.json").read_text())


def test_compile_is_certified():
    net = mp.gnn_compile(mp.Formula.parse("<2>(p | <>p)"))
    assert mp.gnn_certified(net)
    assert len(json.loads(net)["layers"]) >= 2


def test_errors_raise():
    with pytest.raises(mp.ModalpresError):
        mp.Formula.parse("p &")
    with pytest.raises(ValueError):
        mp.Model.from_json('{"signature":[],"worlds":[],"edges":[],"valuation":{},"point":"x"}')
    with pytest.raises(mp.ModalpresError):
        mp.prune(load("fig1.json"))
