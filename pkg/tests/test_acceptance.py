"""Acceptance criteria 1-13, each printed as a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in the
terminal summary under "acceptance criteria".
"""
import filecmp
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from fluent_season import experiments as E
from fluent_season.cli import main as cli_main
from fluent_season.config import ExperimentConfig
from fluent_season.league_core import Fixture, Side, generate_schedule, validate_schedule
from fluent_season.objectives import EPL_BANDS, band_probabilities, map_objective
from fluent_season.outcome_model import (
    OutcomeDistribution, TacticCatalog, cross_entropy, cross_entropy_grad, design_arrays, n_params,
)
from fluent_season.prior_knowledge import CellEvidence, compute_weight
from fluent_season.season_sim import SimulationConfig, simulate_remaining
from fluent_season.synthetic import GeneratorParams, make_world
from fluent_season.tactic_optimizer import DecisionPolicy, PayoffTable, choose_tactic

DEFAULT = ExperimentConfig()
ZERO_EFFECTS = DEFAULT.with_(style_effect=0.0, formation_effect=0.0, interaction_effect=0.0)


def verdict(n: int, name: str, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {name} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def ids(n):
    return [f"T{i:02d}" for i in range(n)]


def test_01_schedule_correctness():
    t0 = time.perf_counter()
    ok = True
    for n in (4, 6, 20):
        fx = generate_schedule(ids(n), seed=n)
        validate_schedule(fx, ids(n))
        ok &= len(fx) == n * (n - 1)
        ok &= {(f.home, f.away) for f in fx} == {(a, b) for a in ids(n) for b in ids(n) if a != b}
        for w in range(2 * (n - 1)):
            week = [t for f in fx if f.week == w for t in (f.home, f.away)]
            ok &= sorted(week) == ids(n)
    dt = time.perf_counter() - t0
    verdict(1, "schedule correctness", ok and dt < 1.0, f"n in 4,6,20; {dt:.3f}s")


def test_02_doubly_stochastic():
    world = make_world(GeneratorParams(), 0)
    probs = np.array([world.marginal(f.home, f.away) for f in world.schedule])
    t0 = time.perf_counter()
    d = simulate_remaining(world.schedule, [], None, SimulationConfig(2000, 0), world.team_ids, probs)
    dt = time.perf_counter() - t0
    rows, cols = d.counts.sum(axis=1), d.counts.sum(axis=0)
    ok = bool((rows == 2000).all() and (cols == 2000).all()) and d.is_doubly_stochastic()
    verdict(2, "position distribution doubly stochastic", ok and dt < 10, f"20 teams, 2000 reps, {dt:.2f}s")


def test_03_forced_champion():
    sched = generate_schedule(ids(20), 5)
    champion = "T07"

    def pred(f: Fixture):
        if f.home == champion:
            return OutcomeDistribution(1.0, 0.0, 0.0)
        if f.away == champion:
            return OutcomeDistribution(0.0, 0.0, 1.0)
        return OutcomeDistribution(0.45, 0.27, 0.28)

    d = simulate_remaining(sched, [], pred, SimulationConfig(2000, 3))
    p = d.row(champion)[0]
    verdict(3, "forced champion", p == 1.0, f"P(rank 1) = {p}")


def test_04_map_on_example_histogram():
    bars = np.array([0, 0, 0, 0, 1, 1, 2, 3, 6, 8, 11, 14, 17, 21, 20, 13, 7, 5, 3, 2], dtype=float)
    obj = map_objective(band_probabilities(bars / bars.sum(), EPL_BANDS))
    verdict(4, "MAP objective on example histogram", obj == "o5", f"objective {obj}")


def test_05_weight_oracle():
    w = compute_weight(CellEvidence(played_games=3, played_wins=2, observed_games=5, observed_wins=1))
    w0 = compute_weight(CellEvidence())
    ok = abs(w - 13 / 30) <= 1e-12 and abs(w0 - 1.0) <= 1e-12
    verdict(5, "weight oracle", ok, f"w = {w!r}, empty = {w0!r}")


def test_06_zero_weight_exclusion():
    """Every nonempty set of positive-weight actions in a 4x4 (16-pair) catalog."""
    cat = TacticCatalog(4, 4)
    k = cat.n_pairs
    g = np.random.default_rng(6)
    cells = g.dirichlet(np.ones(3), size=(k, 4, 4))
    # exact zeros create ties between live and dead actions
    cells[g.random((k, 4, 4)) < 0.3] = [0.0, 0.0, 1.0]
    table = PayoffTable(cat, Side.HOME, cells)
    base = g.uniform(0.1, 2.0, (k, k))
    policies = list(DecisionPolicy)
    bad = 0
    masks = 0
    for mask in range(1, 2 ** k):
        live = np.array([(mask >> i) & 1 for i in range(k)], dtype=bool)
        w = base * live[:, None]
        choice = choose_tactic(table, w, policies[mask % 3])
        bad += not live[choice.index]
        masks += 1
    # known opponent pair: zero weight in that column only
    for y in range(k):
        belief = np.eye(k)[y]
        for mask in range(1, 2 ** 8):
            live = np.zeros(k, dtype=bool)
            live[:8] = [(mask >> i) & 1 for i in range(8)]
            w = base.copy()
            w[~live, y] = 0.0
            choice = choose_tactic(table, w, policies[mask % 3], belief)
            bad += not live[choice.index]
            masks += 1
    verdict(6, "zero-weight actions never chosen", bad == 0, f"{masks} weight patterns, {bad} violations")


def test_07_gradient_check():
    t0 = time.perf_counter()
    worst = 0.0
    for seed in range(20):
        g = np.random.default_rng(100 + seed)
        cat = TacticCatalog(int(g.integers(1, 4)), int(g.integers(1, 4)))
        n = int(g.integers(3, 12))
        phi = design_arrays(cat, g.integers(cat.n_styles, size=n), g.integers(cat.n_formations, size=n),
                            g.integers(cat.n_styles, size=n), g.integers(cat.n_formations, size=n),
                            g.normal(size=n), g.normal(size=n), g.uniform(0, 0.5, n))
        theta = g.normal(size=n_params(cat))
        y = g.integers(3, size=n)
        analytic = cross_entropy_grad(theta, phi, y)
        h = 1e-6
        numeric = np.array([
            (cross_entropy(theta + h * e, phi, y) - cross_entropy(theta - h * e, phi, y)) / (2 * h)
            for e in np.eye(len(theta))])
        rel = np.linalg.norm(analytic - numeric) / max(np.linalg.norm(numeric), 1e-12)
        worst = max(worst, rel)
    dt = time.perf_counter() - t0
    verdict(7, "classifier gradient check", worst < 1e-5 and dt < 5, f"max rel err {worst:.2e}, {dt:.2f}s")


def test_08_monte_carlo_convergence():
    world = make_world(GeneratorParams(), 8)
    probs = np.array([world.marginal(f.home, f.away) for f in world.schedule])

    def spread(n):
        mats = [simulate_remaining(world.schedule, [], None, SimulationConfig(n, 1000 + s),
                                   world.team_ids, probs).matrix for s in range(30)]
        return np.std(mats, axis=0, ddof=1), np.mean(mats, axis=0)

    s1, m1 = spread(1000)
    s2, _ = spread(10000)
    cells = m1 >= 0.05
    ratio = s1[cells] / s2[cells]
    target = np.sqrt(10)
    ok = bool(((ratio >= target / 2) & (ratio <= target * 2)).all())
    verdict(8, "MC std shrinks like 1/sqrt(n)", ok,
            f"{cells.sum()} cells, ratio median {np.median(ratio):.2f} "
            f"range [{ratio.min():.2f}, {ratio.max():.2f}], target {target:.2f}")


def test_09_experiment1_shape():
    m = E.run_experiment1(DEFAULT).metrics
    ok = m["mean_error_late_weeks"] <= m["mean_error_first_weeks"] and m["spearman_week_vs_error"] < 0
    verdict(9, "experiment 1 error falls over the season", ok,
            f"weeks 0-5 {m['mean_error_first_weeks']:.3f}, weeks 30+ {m['mean_error_late_weeks']:.3f}, "
            f"spearman {m['spearman_week_vs_error']:.3f}")


def test_10_experiment2_cap():
    m = E.run_experiment2(DEFAULT).metrics
    ok = m["max_map_accuracy"] <= 85.0 and m["oracle_accuracy"] == 85.0
    verdict(10, "experiment 2 accuracy cap", ok,
            f"max MAP {m['max_map_accuracy']:.1f}%, oracle {m['oracle_accuracy']:.1f}%")


def test_11_experiment3_direction():
    m = E.run_experiment3(DEFAULT).metrics
    z = E.run_experiment3(ZERO_EFFECTS).metrics
    ok = (m["seeds_with_p_better"] >= 16 and m["sign_test_p_value"] < 0.05
          and z["max_abs_accuracy_difference"] < 0.005)
    verdict(11, "experiment 3 weights help only when tactics matter", ok,
            f"better in {m['seeds_with_p_better']}/20, p={m['sign_test_p_value']:.4f}; "
            f"zero effects max |diff| {100 * z['max_abs_accuracy_difference']:.3f}%")


def test_12_experiment4_direction():
    m = E.run_experiment4(DEFAULT).metrics
    a = E.run_all_teams_arm(DEFAULT).metrics
    ok = m["seeds_improved"] >= 16 and m["mean_improvement"] > 0.5 and a["mean_abs_shift"] < 1.0
    verdict(12, "experiment 4 single optimizer gains, all-teams cancels", ok,
            f"improved {m['seeds_improved']}/20, mean {m['mean_improvement']:.2f} positions; "
            f"all-teams mean |shift| {a['mean_abs_shift']:.2f}")


def _clear_caches():
    for fn in (E.setup_seed, E.season_forecast, E._baseline):
        fn.cache_clear()


def test_13_determinism(tmp_path):
    runs = []
    for i, workers in enumerate((1, 1, 3)):
        _clear_caches()
        out = tmp_path / f"run{i}"
        assert cli_main(["exp4", "--out", str(out), "--workers", str(workers)]) == 0
        runs.append(out)
    names = sorted(p.name for p in runs[0].iterdir())
    same = all(
        sorted(p.name for p in r.iterdir()) == names
        and filecmp.cmpfiles(runs[0], r, names, shallow=False)[0] == names
        for r in runs[1:])
    verdict(13, "exp4 artifacts byte-identical", same,
            f"{len(names)} files, workers 1/1/3")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
