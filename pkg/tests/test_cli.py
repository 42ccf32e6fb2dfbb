import csv
import json

import pytest

from fluent_season.cli import build_parser, main, resolve_config
from fluent_season.league_core import write_fixtures_csv, write_results_csv
from fluent_season.synthetic import GeneratorParams, make_world, play_season


@pytest.fixture
def league(tmp_path):
    w = make_world(GeneratorParams(n_teams=10), 1)
    played = play_season(w, 4)
    write_fixtures_csv(tmp_path / "fx.csv", w.schedule)
    write_results_csv(tmp_path / "res.csv", [m.result for m in played if m.fixture.week < 10])
    cat = w.catalog
    with open(tmp_path / "tac.csv", "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["week", "home_id", "away_id", "home_style", "home_formation", "away_style",
                      "away_formation"])
        for m in played:
            if m.fixture.week < 10:
                hp, ap = cat.pair(m.home_tactic), cat.pair(m.away_tactic)
                out.writerow([m.fixture.week, m.fixture.home, m.fixture.away, *hp, *ap])
    return tmp_path


def test_flags_before_or_after_subcommand(tmp_path):
    p = build_parser()
    a = resolve_config(p.parse_args(["--seed", "7", "show-config"]))
    b = resolve_config(p.parse_args(["show-config", "--seed", "7"]))
    assert a == b and a.base_seed == 7
    assert resolve_config(p.parse_args(["exp1", "--full-scale"])).replicates == 100_000


def test_simulate_objective_weights(league, capsys):
    out = league / "o"
    assert main(["simulate", "--fixtures", str(league / "fx.csv"), "--results",
                 str(league / "res.csv"), "--replicates", "500", "--out", str(out)]) == 0
    assert (out / "distribution.csv").exists()
    capsys.readouterr()
    assert main(["objective", "--distribution", str(out / "distribution.csv"), "--team", "T00"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["team_id"] == "T00" and rows[0]["objective"].startswith("o")
    assert main(["weights", "--fixtures", str(league / "fx.csv"), "--results", str(league / "res.csv"),
                 "--tactics", str(league / "tac.csv"), "--team", "T00", "--out", str(out)]) == 0
    assert sum(1 for _ in open(out / "weights.csv")) == 17


def test_simulate_equal_predictor_without_results(league):
    assert main(["simulate", "--fixtures", str(league / "fx.csv"), "--predictor", "equal",
                 "--replicates", "200", "--out", str(league / "e")]) == 0


def test_errors_are_reported(league, capsys):
    assert main(["simulate", "--fixtures", str(league / "missing.csv")]) == 2
    assert "error" in capsys.readouterr().err
    bad = league / "bad.txt"
    bad.write_text("nonsense_key = 1\n")
    assert main(["--config", str(bad), "show-config"]) == 2


def test_experiment_command(tmp_path, capsys):
    cfg = tmp_path / "c.txt"
    cfg.write_text("n_seeds = 1\nreplicates = 200\nclassifier_epochs = 10\n")
    assert main(["exp1", "--config", str(cfg), "--out", str(tmp_path / "x")]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["experiment"] == "exp1"
    assert (tmp_path / "x" / "exp1_mean_curve.csv").exists()
    assert (tmp_path / "x" / "config.txt").exists()
    s = str(tmp_path / "x" / "exp1_summary.json")
    assert main(["compare", s, s]) == 0
