import json

import pytest

import ripscover


@pytest.fixture(scope="module")
def corpus():
    return ripscover.corpus_scenario(1)


def test_scenario_round_trip(corpus):
    back = ripscover.Scenario.from_json(corpus.to_json())
    assert back.sensors == corpus.sensors
    assert back.radii == corpus.radii
    assert len(back) == len(corpus)
    assert set(back.fence()) <= set(range(len(back)))


def test_criteria(corpus):
    v = ripscover.check(corpus, stable=True)
    assert v["criterion"] == "stable"
    assert v["holds"]
    assert v["witness"]["degree"] == 2
    assert ripscover.check(corpus, field="mod2")["holds"]
    assert not ripscover.check(ripscover.hole_scenario(1))["holds"]


def test_perturbation_and_oracle(corpus):
    targets = ripscover.generate_perturbation(corpus, 4)
    ok, index, clause, detail = ripscover.validate_perturbation(corpus, targets)
    assert ok and index == -1
    assert ripscover.coverage(corpus, targets)["covered"]
    far = list(targets)
    far[0] = (far[0][0] + 1.0, far[0][1])
    assert not ripscover.validate_perturbation(corpus, far)[0]
    assert not ripscover.coverage(corpus, [])["covered"]


def test_optimize(corpus):
    targets = ripscover.generate_perturbation(corpus, 4)
    out = ripscover.optimize(corpus, targets)
    num, den = map(int, out["l1_norm"].split("/"))
    inum, iden = map(int, out["input_l1_norm"].split("/"))
    assert num * iden <= inum * den
    assert sorted(out["active_sensors"] + out["deactivated"]) == list(range(len(corpus)))
    assert ripscover.coverage(corpus, [targets[i] for i in out["active_sensors"]])["covered"]


def test_errors(corpus):
    with pytest.raises(ripscover.Error):
        ripscover.Scenario.from_json(json.dumps({"dimension": 2}))
    with pytest.raises(ripscover.Error):
        ripscover.check(corpus, field="gf3")
