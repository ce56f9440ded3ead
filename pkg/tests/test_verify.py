import json

import pytest

from plsheaf.verify import (
    Scenario,
    UnknownScenarioError,
    all_as_expected,
    corpus,
    reports_json,
    run_all,
    run_scenario,
)

NEGATIVES = {"negative-shift-bug", "negative-perturbed-region", "negative-tamarkin-torsion"}


def test_registry_shape(registry):
    names = list(registry)
    assert len(names) == len(set(names)) >= 100
    assert {n for n, sc in registry.items() if sc.negative_control} == NEGATIVES
    assert sum(n.startswith("fex-") for n in names) >= 12
    assert len(corpus()) >= 10


@pytest.mark.parametrize("name", ["fex-closed-cone-dim2", "conefou-closed-box"])
def test_examples_pass(name):
    assert run_scenario(name, 42, 200).status == "PASS"


@pytest.mark.parametrize("name", sorted(NEGATIVES))
def test_negative_controls_fail_with_counterexample(name):
    r = run_scenario(name, 42, 50)
    assert r.status == "FAIL" and r.as_expected
    assert r.counterexample["expected"] != r.counterexample["actual"]


def test_unknown_and_empty():
    with pytest.raises(UnknownScenarioError):
        run_scenario("no-such-scenario")
    assert run_all(42, scenarios={}) == []


def test_build_errors_become_error_reports():
    def build():
        raise ArithmeticError("broken fixture")
    sc = Scenario("broken", "set", build, "")
    r = run_scenario("broken", scenarios={"broken": sc})
    assert r.status == "ERROR" and "ArithmeticError" in r.detail and not r.as_expected


def test_reports_json_is_stable_and_timing_optional():
    reports = run_all(42, 10, names=["fex-closed-cone-dim1", "negative-shift-bug"])
    doc = json.loads(reports_json(reports))
    assert [d["status"] for d in doc] == ["PASS", "FAIL"]
    assert "wall_time" not in doc[0]
    assert "wall_time" in json.loads(reports_json(reports, include_time=True))[0]
    assert reports_json(reports) == reports_json(run_all(42, 10, names=["fex-closed-cone-dim1", "negative-shift-bug"]))


def test_worker_pool_matches_serial():
    names = ["fex-open-cone-dim1", "conefou-closed-point", "negative-perturbed-region"]
    assert reports_json(run_all(3, 10, names=names, processes=2)) == reports_json(run_all(3, 10, names=names))


def test_full_run_as_expected(seed42_reports, registry):
    assert [r.scenario for r in seed42_reports] == list(registry)
    assert all_as_expected(seed42_reports)


def test_doubling_samples_repasses(seed42_reports, registry):
    for r in seed42_reports:
        if r.status == "PASS":
            again = run_scenario(r.scenario, 42, 2 * registry[r.scenario].samples)
            assert again.status == "PASS", r.scenario
