import json
import math
import os
import subprocess

import pytest

import sdlab


def test_values():
    assert sdlab.m_sd(sdlab.zoo.singletons(8)) == 1
    assert sdlab.m_sd(sdlab.zoo.k_intervals(2, 8)) == 4
    b = sdlab.zoo.bendavid(3, 1)
    assert len(b) == 24
    assert (sdlab.vc_dim(b), sdlab.m_sd(b), sdlab.teaching_dim(b)) == (3, 4, 4)
    r = sdlab.zoo.grid_rectangles(2, 3)
    assert sdlab.m_sd(r) == 4
    assert sdlab.m_sd(r, points=list(range(9))) == 2


def test_chain_and_game():
    t = sdlab.zoo.thresholds(4)
    chain = (sdlab.online_bound(t), sdlab.m_worst(t), sdlab.m_best(t), sdlab.m_sd(t), sdlab.vc_dim(t))
    assert chain == (2, 2, 1, 1, 1)
    assert sdlab.labelling_game_value(t) == 1
    assert sdlab.fixed_order_bound(t, [2, 1, 3, 0]) == 2


def test_classes_and_errors():
    c = sdlab.ConceptClass.from_rows([[0, 1], [1, 1]], num_points=2)
    assert c.num_concepts == 2
    assert sdlab.ConceptClass.from_json(c.to_json()) == c
    assert sdlab.resolve("zoo:thresholds:3") == sdlab.zoo.thresholds(3)
    with pytest.raises(sdlab.ArgumentError):
        sdlab.ConceptClass.from_rows([[0, 1], [0, 1]], num_points=2)
    with pytest.raises(ValueError):
        sdlab.resolve("zoo:nope:1")
    with pytest.raises(sdlab.UnsupportedError):
        sdlab.vc_dim(sdlab.ConceptClass.from_rows([[0], [2]], num_points=1, num_labels=3))
    with pytest.raises(sdlab.BudgetExceeded):
        sdlab.m_sd(sdlab.zoo.k_intervals(2, 8), points=list(range(8)), budget_states=3)


def test_report_and_simulation():
    rep = sdlab.report("zoo:singletons:5")
    assert rep["chain_holds"] and rep["complete"]
    assert {m["measure"]: m["value"] for m in rep["measures"]}["m_sd"] == 1
    steps, summary = sdlab.simulate(sdlab.zoo.k_intervals(2, 8))
    assert summary["mistakes"] == 4
    assert len(steps) == 8


def test_agnostic():
    r = sdlab.zoo.grid_rectangles(2, 3)
    rep = sdlab.agnostic(r, lowerbound_k=50, trials=200, seed=1)
    assert rep["T"] == 200
    assert rep["eta"] == pytest.approx(math.sqrt(8 * math.log(rep["N"]) / 200))
    assert rep["lower_bound"] == pytest.approx(10.0)
    assert rep == sdlab.agnostic(r, lowerbound_k=50, trials=200, seed=1)


def test_reproduce_core():
    rows = sdlab.reproduce("core")
    assert rows and all(r["pass"] for r in rows)


@pytest.mark.skipif("SDLAB_EXE" not in os.environ, reason="CLI path not provided")
def test_cli_matches_bindings():
    out = subprocess.run([os.environ["SDLAB_EXE"], "dims", "zoo:bendavid:3:1", "--measures", "vc,m_sd,td"],
                         check=True, capture_output=True, text=True).stdout
    assert json.loads(out) == sdlab.report("zoo:bendavid:3:1", ["vc", "m_sd", "td"])
