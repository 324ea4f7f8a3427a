import pytest

import modules.fuzz as fuzz
from engine.spectrum import check_recursion_all_vertices
from modules.fuzz import FuzzReport, GapTally, TrialResult, fuzz_conjecture, run_trial
from modules.serialization import FuzzConfig


def small_config(**overrides):
    values = {"n_min": 2, "n_max": 4, "trials": 8, "seed": 3}
    values.update(overrides)
    return FuzzConfig(**values)


def test_zero_trials_gives_an_empty_report():
    report = fuzz_conjecture(small_config(trials=0))
    assert report.results == []
    assert report.tallies == {}
    assert report.to_dict()["counterexamples"] == []


def test_trials_replay_on_their_own():
    config = small_config()
    assert run_trial(config, 5) == run_trial(config, 5)
    assert run_trial(config, 5).seed == (3, 5)


def test_trial_fields_follow_the_config():
    config = small_config(rank_gaps=[2, 3], backends=["graphic"])
    for t in range(6):
        result = run_trial(config, t)
        assert 2 <= result.n <= 4
        assert result.gap in (2, 3)
        assert result.backend == "graphic"
        assert len(result.removed) == result.gap
        assert result.interval["n"] == result.n


def test_single_element_minors_never_fail():
    report = fuzz_conjecture(small_config(rank_gaps=[1], trials=12))
    assert len(report.results) == 12
    assert report.counterexamples == []
    assert report.tallies[1].pass_rate == 1.0


def test_report_tallies_by_gap():
    report = fuzz_conjecture(small_config(rank_gaps=[1, 2], trials=10))
    tallies = report.tallies
    assert sum(t.trials for t in tallies.values()) == 10
    assert list(tallies) == sorted(tallies)
    data = report.to_dict()
    assert set(data) == {"config", "tallies", "trials", "counterexamples"}
    assert all("interval" in c for c in data["counterexamples"])
    assert all("interval" not in t for t in data["trials"])


def test_parallel_run_matches_sequential():
    config = small_config(trials=4)
    sequential = fuzz_conjecture(config, jobs=1)
    parallel = fuzz_conjecture(config, jobs=2)
    assert parallel.results == sequential.results


def test_counterexample_flag():
    base = dict(trial=0, seed=(0, 0), backend="gf2", n=3, gap=2, matroid={}, removed=(1, 2), interval={})
    assert not TrialResult(integral=True, holds=True, **base).is_counterexample
    assert TrialResult(integral=False, holds=True, **base).is_counterexample
    assert TrialResult(integral=True, holds=False, failing_vertices=(2,), **base).is_counterexample


def test_gap_tally_counts():
    tally = GapTally()
    assert tally.pass_rate == 1.0
    base = dict(trial=0, seed=(0, 0), backend="gf2", n=3, gap=2, matroid={}, removed=(1, 2), interval={})
    tally.add(TrialResult(integral=True, holds=True, **base))
    tally.add(TrialResult(integral=True, holds=False, **base))
    assert tally.to_dict() == {"trials": 2, "integral": 2, "recursion_holds": 1, "both": 1}
    assert tally.pass_rate == pytest.approx(0.5)
    assert FuzzReport(small_config()).counterexamples == []


def test_tolerances_reach_the_recursion_check(mocker):
    checker = mocker.patch.object(fuzz, "check_recursion_all_vertices", wraps=check_recursion_all_vertices)
    measured = mocker.patch.object(fuzz, "spectrum", wraps=fuzz.spectrum)
    tolerances = {"tolerance": 1e-4, "zero_tolerance": 1e-8, "group_tolerance": 1e-5}
    report = fuzz_conjecture(small_config(trials=3), jobs=1, **tolerances)
    assert len(report.results) == 3
    assert checker.call_count == 3
    for call in checker.call_args_list:
        assert call.kwargs == tolerances
    for call in measured.call_args_list:
        assert call.kwargs == {"zero_tolerance": 1e-8, "group_tolerance": 1e-5}
