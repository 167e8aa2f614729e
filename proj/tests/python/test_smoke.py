import json

import pytest

import parab


def test_delta_p3_fixture():
    d = parab.delta_closed_form(3, [2], [0])
    assert d == [[[0], [2], [0]], [[1], [0], [2]], [[0], [1], [0]]]
    assert parab.boundary_delta(3, [2], [0]) == d


def test_delta_matches_cech_over_f25():
    l0, l1 = [2, 3], [1, 4]
    assert parab.delta_closed_form(5, l0, l1, k=2) == parab.boundary_delta(5, l0, l1, k=2)


def test_det_and_roots():
    assert parab.det_poly_lambda1(3, [2]) == [[0], [2], [0], [1]]
    t = parab.periodicity_roots(5, [2], max_ext_degree=2)
    assert t["total_multiplicity"] == 5
    assert sum(r["multiplicity"] for r in t["roots"] if r["degree"] == 1) == 3
    assert sum(r["multiplicity"] for r in t["roots"] if r["degree"] == 2) == 2


def test_flow_verdicts():
    for b in range(3):
        assert parab.hn_type(3, [2], [b]) == 1
        assert parab.flow_is_period_one(3, [2], [b])
    assert parab.hn_type(3, [2], [0, 1], k=2) == 0
    with pytest.raises(parab.NonPeriodicError):
        parab.flow_is_period_one(3, [2], [0, 1], k=2)


def test_validation_errors():
    with pytest.raises(ValueError):
        parab.delta_closed_form(2, [1], [0])
    with pytest.raises(ValueError):
        parab.delta_closed_form(5, [1], [0])
    with pytest.raises(ValueError):
        parab.delta_closed_form(5, [7], [0])


def test_cartier_round_trip():
    p, l0, l1 = 5, [2], [3]
    twisted = [pow(2, p, p)]
    H = parab.random_higgs(p, twisted, rank=2, seed=4)
    C = parab.inverse_cartier(H, l0, l1)
    assert parab.is_isomorphic(parab.cartier(C, l0, l1), H)


def test_json_round_trip():
    H = parab.random_higgs(3, [2], rank=2, seed=9)
    assert json.loads(parab.normalize_conn(H)) == json.loads(H)
    di = json.loads(parab.deligne_illusie(3, [2], [1]))
    assert set(di) == {"num", "den"}


def test_suites_run():
    assert "cartier" in parab.suite_names()
    r = parab.run_suite("descent", seed=3, instances=3)
    assert r["ok"] and r["cases"] > 0
    with pytest.raises(ValueError):
        parab.run_suite("nope")
