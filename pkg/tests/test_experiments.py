import json

import numpy as np
import pytest

from fluent_season import experiments as E
from fluent_season.config import ExperimentConfig

SMALL = ExperimentConfig(n_seeds=2, replicates=300, final_replicates=600, classifier_epochs=20)


def test_weighted_probs():
    p = np.array([[0.5, 0.3, 0.2], [0.2, 0.2, 0.6]])
    ones = np.ones(2)
    assert np.allclose(E.weighted_probs(p, ones, ones, 1.3), p)
    assert np.allclose(E.weighted_probs(p, np.array([0.7, 0.1]), ones, 0.0), p)
    assert np.allclose(E.weighted_probs(p, np.zeros(2), np.zeros(2), 1.0), p)
    q = E.weighted_probs(p, np.array([1.0, 1.0]), np.array([0.25, 0.25]), 1.0)
    assert np.allclose(q.sum(axis=1), 1)
    assert (q[:, 0] > p[:, 0]).all()


def test_focal_team_is_bottom_eight():
    cfg = ExperimentConfig()
    for seed in range(5):
        world = E.setup_seed(cfg.with_(n_seeds=1), seed).world
        assert E.focal_team(cfg, seed, world) in world.strength_order()[-8:]
    with pytest.raises(ValueError):
        E.focal_team(cfg.with_(focal_team="nope"), 0, world)


def test_nobody_optimizing_is_baseline():
    r = E.run_all_teams_arm(SMALL.with_(n_seeds=1), nobody=True)
    assert r.metrics["mean_abs_shift"] == 0.0


def test_managed_season_records_decisions():
    season = E.play_managed_season(SMALL, 0, ["T05"])
    assert len(season.played) == 380
    assert len(season.decisions) == 38
    assert all(d.team_id == "T05" for d in season.decisions)
    assert season.final.is_doubly_stochastic()


def test_experiment2_cap_and_random_arm():
    r = E.run_experiment2(SMALL)
    assert r.metrics["max_map_accuracy"] <= 85.0
    assert r.metrics["oracle_accuracy"] == 85.0
    assert r.metrics["mean_random_accuracy"] < r.metrics["mean_map_accuracy"]


def test_report_write_and_compare(tmp_path):
    r = E.run_experiment1(SMALL)
    paths = r.write(tmp_path)
    names = {p.name for p in paths}
    assert {"exp1_curve.csv", "exp1_summary.json", "ground_truth_teams.csv",
            "ground_truth_tactics.csv"} <= names
    s = E.load_summary(tmp_path / "exp1_summary.json")
    assert s["config_hash"] == SMALL.config_hash()
    assert E.compare_summaries(s, s)["spearman_week_vs_error"] == 0.0
    other = json.loads(json.dumps(s))
    other["config_hash"] = "0" * 16
    with pytest.raises(E.ReportMismatch):
        E.compare_summaries(s, other)


def test_experiment3_metrics_shape():
    r = E.run_experiment3(SMALL.with_(test_seasons=1))
    header, rows = r.tables["exp3_metrics.csv"]
    assert len(rows) == 2 and "with_f1" in header
    assert 0.0 <= r.metrics["mean_exponent"] <= 4.0


def test_fixed_exponent_zero_gives_identical_arms():
    r = E.run_experiment3(SMALL.with_(test_seasons=1, p_exponent="0"))
    assert r.metrics["mean_accuracy_difference"] == 0.0
