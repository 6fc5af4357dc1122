import json

import pytest

from rankmin.fields import make_field
from rankmin.suites import UnknownSuite, run_suite, suite_names


def test_all_suites_registered_and_pass_briefly():
    for name in suite_names():
        report = run_suite(name, trials=12, seed=3)
        assert report.passed, (name, [r.to_json() for r in report.results
                                      if not r.passed])


def test_unknown_suite_raises():
    with pytest.raises(UnknownSuite):
        run_suite("no-such-suite")


def test_zero_trials_vacuous():
    report = run_suite("grw-monotone", trials=0, seed=1)
    assert report.passed and report.results == []


def test_deterministic_under_seed():
    a = run_suite("criteria-agreement", trials=10, seed=11)
    b = run_suite("criteria-agreement", trials=10, seed=11)
    assert json.dumps(a.to_json(), sort_keys=True) == \
        json.dumps(b.to_json(), sort_keys=True)


def test_custom_tower_list():
    towers = [make_field(2, 2, ext_poly=(1, 1, 1))]
    report = run_suite("field-axioms", trials=30, seed=5, towers=towers)
    assert report.passed
    assert sum(r.instances for r in report.results) == 90  # 3 properties x 30


def test_timing_excluded_from_json_by_default():
    report = run_suite("empty", trials=1, seed=0)
    obj = report.to_json()
    assert "wall_time_ms" not in obj
    obj_timed = report.to_json(include_timing=True)
    assert "wall_time_ms" in obj_timed
