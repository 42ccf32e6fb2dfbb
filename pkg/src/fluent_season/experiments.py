"""Desk-scale experiments on synthetic leagues.

Each ``run_*`` function returns an :class:`ExperimentReport`; ``write``
persists its CSV tables, the synthetic ground truth and a JSON summary
carrying the config hash.
"""
from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy import optimize, stats
from sklearn.metrics import accuracy_score, precision_recall_fscore_support

from . import rng
from .config import ExperimentConfig
from .league_core import Fixture, Result, Side, standings
from .objectives import (
    EPL_BANDS, band_probabilities, map_objective, objective_accuracy_curve,
    realized_band, scaled_bands,
)
from .outcome_model import (
    Predictor, fit_strengths, train_classifier,
)
from .prior_knowledge import (
    EvidenceCounts, Source, record_observations, side_observations, weight_matrix,
)
from .season_sim import (
    PositionDistribution, SimulationConfig, expected_position, modal_position,
    simulate_remaining,
)
from .synthetic import (
    PlayedMatch, World, draw_outcome, history, make_world, outcome_uniform,
    play_season, training_examples, uniform_tactic,
)
from .tactic_optimizer import (
    DecisionRecord, PolicyConfig, build_payoff_table, choose_tactic, select_policy,
)

log = logging.getLogger(__name__)

# stream tags
_HISTORY, _SEASON, _WEEK, _FINAL, _FOCAL, _RANDOM_OBJ = 0x4851, 0x5345, 0x574B, 0x464E, 0x4643, 0x524F


class ReportMismatch(ValueError):
    pass


@dataclass
class ExperimentReport:
    name: str
    config: ExperimentConfig
    metrics: dict
    tables: dict[str, tuple[list[str], list[list]]] = field(default_factory=dict)
    worlds: list[World] = field(default_factory=list, repr=False)

    @property
    def config_hash(self) -> str:
        return self.config.config_hash()

    def summary(self) -> dict:
        return {
            "experiment": self.name,
            "config_hash": self.config_hash,
            "config": self.config.semantic_dict(),
            "metrics": self.metrics,
        }

    def write(self, out_dir: str | Path) -> list[Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = []
        for fname, (header, rows) in self.tables.items():
            p = out / fname
            _write_csv(p, header, rows)
            paths.append(p)
        if self.worlds:
            paths += write_ground_truth(out, self.worlds)
        p = out / f"{self.name}_summary.json"
        p.write_text(json.dumps(self.summary(), sort_keys=True, indent=2) + "\n", encoding="utf-8")
        paths.append(p)
        return paths


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return int(v)
    return v


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_fmt(v) for v in r])


def write_ground_truth(out: Path, worlds: Sequence[World]) -> list[Path]:
    teams_rows, tactic_rows = [], []
    for wd in worlds:
        for t in wd.teams.values():
            teams_rows.append([wd.seed, t.id, t.attack_strength, t.defence_strength, t.home_advantage])
        k = wd.catalog.n_pairs
        for x in range(k):
            for y in range(k):
                tactic_rows.append([wd.seed, x, y, wd.main_effect[x], wd.interaction[x, y]])
    a, b = out / "ground_truth_teams.csv", out / "ground_truth_tactics.csv"
    _write_csv(a, ["seed", "team_id", "attack", "defence", "home_advantage"], teams_rows)
    _write_csv(b, ["seed", "our_pair", "opp_pair", "main_effect", "interaction"], tactic_rows)
    return [a, b]


def load_summary(path: str | Path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def compare_summaries(a: dict, b: dict) -> dict:
    """Metric-by-metric difference ``b - a``; refuses reports with different config hashes."""
    if a.get("config_hash") != b.get("config_hash"):
        raise ReportMismatch(f"config hashes differ: {a.get('config_hash')} vs {b.get('config_hash')}")
    out = {}
    for k, v in a["metrics"].items():
        w = b["metrics"].get(k)
        if isinstance(v, (int, float)) and isinstance(w, (int, float)):
            out[k] = w - v
    return out


# ---------------------------------------------------------------------------
# shared setup


@dataclass(frozen=True, eq=False)
class SeedSetup:
    seed: int
    world: World
    history: list[PlayedMatch]
    predictor: Predictor
    season_key: int


def bands_for(cfg: ExperimentConfig):
    return EPL_BANDS if cfg.n_teams == 20 else scaled_bands(cfg.n_teams)


@lru_cache(maxsize=64)
def setup_seed(cfg: ExperimentConfig, seed: int) -> SeedSetup:
    """World, earlier seasons and the classifier trained on them."""
    world = make_world(cfg.generator(), seed)
    past = history(world, cfg.train_seasons, rng.seed_key(seed, _HISTORY))
    params = train_classifier(training_examples(world, past), world.catalog,
                              epochs=cfg.classifier_epochs, learning_rate=cfg.classifier_lr,
                              seed=seed)
    return SeedSetup(seed, world, past, Predictor(params, world.teams), rng.seed_key(seed, _SEASON))


def sim_config(cfg: ExperimentConfig, *key_parts: int, final: bool = False) -> SimulationConfig:
    n = cfg.final_replicates if final else cfg.replicates
    return SimulationConfig(n, rng.seed_key(*key_parts), workers=cfg.workers)


def _uniform_probs(setup: SeedSetup, fixtures: Sequence[Fixture]) -> np.ndarray:
    return np.array([setup.predictor.marginal(f.home, f.away) for f in fixtures]).reshape(-1, 3)


# ---------------------------------------------------------------------------
# experiments 1 and 2: weekly forecasts of one season


@dataclass(frozen=True, eq=False)
class SeasonForecast:
    setup: SeedSetup
    played: list[PlayedMatch]
    final_ranks: dict[str, int]
    weekly: list[PositionDistribution]


@lru_cache(maxsize=64)
def season_forecast(cfg: ExperimentConfig, seed: int) -> SeasonForecast:
    log.info("weekly forecasts, seed %d", seed)
    setup = setup_seed(cfg, seed)
    world = setup.world
    played = play_season(world, setup.season_key)
    results = [m.result for m in played]
    table = standings(world.team_ids, results, rng.seed_key(seed, _FINAL))
    final = {t: table.rank_of(t) for t in world.team_ids}
    probs_all = _uniform_probs(setup, world.schedule)
    weekly = []
    for week in range(cfg.n_weeks):
        done = [r for r in results if r.week < week]
        mask = np.array([f.week >= week for f in world.schedule])
        weekly.append(simulate_remaining(world.schedule, done, None, sim_config(cfg, seed, _WEEK, week),
                                         team_ids=world.team_ids, probs=probs_all[mask]))
    return SeasonForecast(setup, played, final, weekly)


def run_experiment1(cfg: ExperimentConfig) -> ExperimentReport:
    """Weekly mean absolute gap between predicted and final rank."""
    rows = []
    curves = []
    for seed in cfg.seeds:
        fc = season_forecast(cfg, seed)
        for week, d in enumerate(fc.weekly):
            modal = np.mean([abs(fc.final_ranks[t] - modal_position(d, t)) for t in d.team_ids])
            expct = np.mean([abs(fc.final_ranks[t] - expected_position(d, t)) for t in d.team_ids])
            rows.append([seed, week, float(modal), float(expct)])
        curves.append([r[2] for r in rows[-cfg.n_weeks:]])
    mean_curve = np.mean(curves, axis=0)
    weeks = np.arange(cfg.n_weeks)
    rho = float(stats.spearmanr(weeks, mean_curve).statistic)
    early = float(mean_curve[: min(6, cfg.n_weeks)].mean())
    late_from = min(30, cfg.n_weeks - 1) if cfg.n_weeks > 30 else (cfg.n_weeks * 4) // 5
    late = float(mean_curve[late_from:].mean())
    metrics = {
        "mean_error_first_weeks": early,
        "mean_error_late_weeks": late,
        "late_from_week": int(late_from),
        "spearman_week_vs_error": rho,
        "curve_week0": float(mean_curve[0]),
        "curve_last_week": float(mean_curve[-1]),
    }
    mean_rows = [[int(w), float(v)] for w, v in zip(weeks, mean_curve)]
    return ExperimentReport("exp1", cfg, metrics, {
        "exp1_curve.csv": (["seed", "week", "modal_abs_error", "expected_abs_error"], rows),
        "exp1_mean_curve.csv": (["week", "mean_modal_abs_error"], mean_rows),
    }, [season_forecast(cfg, s).setup.world for s in cfg.seeds])


def weekly_map_objectives(fc: SeasonForecast, bands) -> list[dict[str, str]]:
    return [{t: map_objective(band_probabilities(d.row(t), bands)) for t in d.team_ids}
            for d in fc.weekly]


def run_experiment2(cfg: ExperimentConfig) -> ExperimentReport:
    """Weekly share of teams whose MAP objective was met, against random and oracle objectives."""
    bands = bands_for(cfg)
    band_ids = [b.id for b in bands]
    rows, trace = [], []
    map_acc, rand_acc, oracle_acc = [], [], []
    for seed in cfg.seeds:
        fc = season_forecast(cfg, seed)
        objs = weekly_map_objectives(fc, bands)
        gen = rng.generator(seed, _RANDOM_OBJ)
        rand_objs = [{t: band_ids[int(gen.integers(len(band_ids)))] for t in wk} for wk in objs]
        oracle = {t: realized_band(r, bands) or band_ids[-1] for t, r in fc.final_ranks.items()}
        a = objective_accuracy_curve(objs, fc.final_ranks, bands)
        b = objective_accuracy_curve(rand_objs, fc.final_ranks, bands)
        c = objective_accuracy_curve([oracle] * len(objs), fc.final_ranks, bands)
        map_acc.append(a)
        rand_acc.append(b)
        oracle_acc.append(c)
        rows += [[seed, w, a[w], b[w], c[w]] for w in range(len(a))]
        if seed == cfg.seeds[0]:
            for w, d in enumerate(fc.weekly):
                for t in d.team_ids:
                    p = band_probabilities(d.row(t), bands)
                    trace.append([w, t, objs[w][t], *p.probs, p.residual])
    map_acc, rand_acc, oracle_acc = map(np.array, (map_acc, rand_acc, oracle_acc))
    metrics = {
        "max_map_accuracy": float(map_acc.max()),
        "mean_map_accuracy": float(map_acc.mean()),
        "mean_random_accuracy": float(rand_acc.mean()),
        "oracle_accuracy": float(oracle_acc.mean()),
        "map_week0": float(map_acc[:, 0].mean()),
        "map_last_week": float(map_acc[:, -1].mean()),
        "seeds_map_beats_random": int((map_acc.mean(axis=1) > rand_acc.mean(axis=1)).sum()),
    }
    return ExperimentReport("exp2", cfg, metrics, {
        "exp2_accuracy.csv": (["seed", "week", "map_accuracy", "random_accuracy", "oracle_accuracy"], rows),
        "exp2_objective_trace.csv": (
            ["week", "team_id", "objective", "p_o1", "p_o2", "p_o3", "p_o4", "p_o5", "residual"], trace),
    }, [setup_seed(cfg, s).world for s in cfg.seeds])


# ---------------------------------------------------------------------------
# experiment 3: strength model with and without the weight matrix


def weighted_probs(p: np.ndarray, w_home: np.ndarray, w_away: np.ndarray, exponent: float) -> np.ndarray:
    """Reweight (h, d, a) by the two sides' matchup weights raised to ``exponent``.

    A draw is weighted by the geometric mean of both weights.  Rows whose
    weights are all zero keep the unweighted distribution.
    """
    wh = np.power(w_home, exponent)
    wa = np.power(w_away, exponent)
    q = p * np.stack([wh, np.sqrt(wh * wa), wa], axis=-1)
    s = q.sum(axis=-1, keepdims=True)
    return np.where(s > 0, q / np.where(s > 0, s, 1.0), p)


def _online_weight_features(matches: Sequence[PlayedMatch], counts: EvidenceCounts,
                            draw_credit: float):
    """For each match, the weights known before its week; returns features and final counts."""
    wh = np.empty(len(matches))
    wa = np.empty(len(matches))
    i = 0
    n = len(matches)
    while i < n:
        j = i
        week = matches[i].fixture.week
        while j < n and matches[j].fixture.week == week:
            j += 1
        W = weight_matrix(counts, draw_credit)
        obs = []
        for k in range(i, j):
            m = matches[k]
            wh[k] = W[m.home_tactic, m.away_tactic]
            wa[k] = W[m.away_tactic, m.home_tactic]
            obs += side_observations(m.home_tactic, m.away_tactic, m.outcome, Source.OBSERVED)
        counts = record_observations(counts, obs)
        i = j
    return wh, wa, counts


def _seasons(matches: Sequence[PlayedMatch], per_season: int) -> list[list[PlayedMatch]]:
    return [list(matches[i:i + per_season]) for i in range(0, len(matches), per_season)]


def experiment3_seed(cfg: ExperimentConfig, seed: int) -> dict:
    log.info("exp3 seed %d", seed)
    world = make_world(cfg.generator(), seed)
    per = len(world.schedule)
    past = history(world, cfg.train_seasons, rng.seed_key(seed, _HISTORY))
    test = history(world, cfg.test_seasons, rng.seed_key(seed, _SEASON))
    strengths = fit_strengths([m.result for m in past], world.team_ids)

    def base_probs(ms):
        return np.array([strengths.probs(m.fixture.home, m.fixture.away) for m in ms]).reshape(-1, 3)

    counts = EvidenceCounts.empty(world.catalog.n_pairs)
    tr_h, tr_a = [], []
    for season in _seasons(past, per):
        a, b, counts = _online_weight_features(season, counts, cfg.draw_credit)
        tr_h.append(a)
        tr_a.append(b)
    tr_h, tr_a = np.concatenate(tr_h), np.concatenate(tr_a)
    y_tr = np.array([m.outcome.index for m in past])
    p_tr = base_probs(past)

    if cfg.p_exponent == "fit":
        def nll(k):
            q = weighted_probs(p_tr, tr_h, tr_a, k)
            return -np.log(np.maximum(q[np.arange(len(y_tr)), y_tr], 1e-12)).sum()
        exponent = float(optimize.minimize_scalar(nll, bounds=(0.0, 4.0), method="bounded",
                                                  options={"xatol": 1e-4}).x)
    else:
        exponent = float(cfg.p_exponent)

    te_h, te_a = [], []
    for season in _seasons(test, per):
        a, b, counts = _online_weight_features(season, counts, cfg.draw_credit)
        te_h.append(a)
        te_a.append(b)
    te_h, te_a = np.concatenate(te_h), np.concatenate(te_a)
    y = np.array([m.outcome.index for m in test])
    p0 = base_probs(test)
    p1 = weighted_probs(p0, te_h, te_a, exponent)
    out = {"seed": seed, "exponent": exponent, "n_games": len(y)}
    for arm, p in (("without", p0), ("with", p1)):
        pred = p.argmax(axis=1)
        prec, rec, f1, _ = precision_recall_fscore_support(y, pred, labels=[0, 1, 2],
                                                           average="weighted", zero_division=0)
        out[f"{arm}_accuracy"] = float(accuracy_score(y, pred))
        out[f"{arm}_precision"] = float(prec)
        out[f"{arm}_recall"] = float(rec)
        out[f"{arm}_f1"] = float(f1)
    return out


def run_experiment3(cfg: ExperimentConfig) -> ExperimentReport:
    """Strength-model prediction metrics with and without tactic weights."""
    per_seed = [experiment3_seed(cfg, s) for s in cfg.seeds]
    keys = ["seed", "exponent", "n_games"] + [f"{a}_{m}" for a in ("without", "with")
                                             for m in ("accuracy", "precision", "recall", "f1")]
    rows = [[r[k] for k in keys] for r in per_seed]
    diff = np.array([r["with_accuracy"] - r["without_accuracy"] for r in per_seed])
    wins = int((diff > 0).sum())
    metrics = {
        "seeds_with_p_better": wins,
        "seeds_with_p_worse": int((diff < 0).sum()),
        "sign_test_p_value": float(stats.binomtest(wins, len(diff), 0.5, alternative="greater").pvalue),
        "mean_accuracy_without_p": float(np.mean([r["without_accuracy"] for r in per_seed])),
        "mean_accuracy_with_p": float(np.mean([r["with_accuracy"] for r in per_seed])),
        "mean_accuracy_difference": float(diff.mean()),
        "max_abs_accuracy_difference": float(np.abs(diff).max()),
        "mean_exponent": float(np.mean([r["exponent"] for r in per_seed])),
    }
    for m in ("precision", "recall", "f1"):
        metrics[f"mean_{m}_difference"] = float(np.mean([r[f"with_{m}"] - r[f"without_{m}"] for r in per_seed]))
    return ExperimentReport("exp3", cfg, metrics, {"exp3_metrics.csv": (keys, rows)},
                            [make_world(cfg.generator(), s) for s in cfg.seeds])


# ---------------------------------------------------------------------------
# experiment 4: managed seasons


@dataclass(frozen=True, eq=False)
class ManagedSeason:
    managed: frozenset[str]
    played: list[PlayedMatch]
    decisions: list[DecisionRecord]
    final: PositionDistribution


def policy_config(cfg: ExperimentConfig) -> PolicyConfig:
    return PolicyConfig(on_track_low=cfg.on_track_low, on_track_high=cfg.on_track_high,
                        expectimax_mix=cfg.expectimax_mix)


def initial_evidence(setup: SeedSetup, cfg: ExperimentConfig) -> EvidenceCounts:
    counts = EvidenceCounts.empty(setup.world.catalog.n_pairs)
    if not cfg.carry_over_weights:
        return counts
    obs = []
    for m in setup.history:
        obs += side_observations(m.home_tactic, m.away_tactic, m.outcome, Source.OBSERVED)
    return record_observations(counts, obs)


def play_managed_season(cfg: ExperimentConfig, seed: int, managed: Sequence[str]) -> ManagedSeason:
    """Play one season week by week; teams in ``managed`` pick tactics with the
    fluent objective and their weight matrix, everyone else draws uniformly.

    Outcome and tactic draws are keyed on the fixture, so arms with different
    managed sets share their random numbers.
    """
    setup = setup_seed(cfg, seed)
    world, predictor = setup.world, setup.predictor
    managed = frozenset(managed)
    bands = bands_for(cfg)
    pcfg = policy_config(cfg)
    k = world.catalog.n_pairs
    key = setup.season_key
    start = initial_evidence(setup, cfg)
    evidence = {t: start for t in managed}
    probs_all = _uniform_probs(setup, world.schedule)

    results: list[Result] = []
    played: list[PlayedMatch] = []
    decisions: list[DecisionRecord] = []
    by_week: dict[int, list[tuple[int, Fixture]]] = {}
    for fid, fx in enumerate(world.schedule):
        by_week.setdefault(fx.week, []).append((fid, fx))

    for week in range(cfg.n_weeks):
        fixtures = by_week.get(week, [])
        dist = None
        if managed:
            mask = np.array([f.week >= week for f in world.schedule])
            dist = simulate_remaining(world.schedule, results, None, sim_config(cfg, seed, _WEEK, week),
                                      team_ids=world.team_ids, probs=probs_all[mask])
        week_matches = []
        for fid, fx in fixtures:
            xs = [uniform_tactic(key, fid, 0, k), uniform_tactic(key, fid, 1, k)]
            for side_i, (side, team) in enumerate(((Side.HOME, fx.home), (Side.AWAY, fx.away))):
                if team not in managed:
                    continue
                probs = band_probabilities(dist.row(team), bands)
                objective = map_objective(probs)
                policy = select_policy(objective, probs, pcfg)
                W = weight_matrix(evidence[team], cfg.draw_credit)
                choice = choose_tactic(build_payoff_table(fx, predictor, side), W, policy,
                                       mix=pcfg.expectimax_mix)
                xs[side_i] = choice.index
                decisions.append(DecisionRecord(week, team, policy, choice.pair, choice.expected_payoff))
            p = world.probs(fx.home, fx.away, xs[0], xs[1])
            m = PlayedMatch(fx, fid, xs[0], xs[1], draw_outcome(p, outcome_uniform(key, fid)))
            week_matches.append(m)
        played += week_matches
        results += [m.result for m in week_matches]
        for team in managed:
            obs = []
            for m in week_matches:
                if team == m.fixture.home:
                    obs.append(side_observations(m.home_tactic, m.away_tactic, m.outcome, Source.PLAYED)[0])
                elif team == m.fixture.away:
                    obs.append(side_observations(m.home_tactic, m.away_tactic, m.outcome, Source.PLAYED)[1])
                else:
                    obs += side_observations(m.home_tactic, m.away_tactic, m.outcome, Source.OBSERVED)
            evidence[team] = record_observations(evidence[team], obs)

    final = final_distribution(cfg, seed, world, played, managed)
    return ManagedSeason(managed, played, decisions, final)


def final_distribution(cfg: ExperimentConfig, seed: int, world: World,
                       played: Sequence[PlayedMatch], managed: frozenset[str]) -> PositionDistribution:
    """Finishing distribution of the whole season under the true model, with
    managed teams' recorded tactics and every other side drawing uniformly."""
    probs = []
    for m in played:
        xh = m.home_tactic if m.fixture.home in managed else None
        xa = m.away_tactic if m.fixture.away in managed else None
        probs.append(world.marginal(m.fixture.home, m.fixture.away, xh, xa))
    order = sorted(range(len(played)), key=lambda i: played[i].fixture_id)
    probs = np.array([probs[i] for i in order])
    return simulate_remaining(world.schedule, [], None, sim_config(cfg, seed, _FINAL, final=True),
                              team_ids=world.team_ids, probs=probs)


def focal_team(cfg: ExperimentConfig, seed: int, world: World) -> str:
    if cfg.focal_team != "bottom8":
        if cfg.focal_team not in world.teams:
            raise ValueError(f"focal team {cfg.focal_team!r} not in league")
        return cfg.focal_team
    order = world.strength_order()
    bottom = order[-min(8, len(order) // 2):]
    return bottom[int(rng.generator(seed, _FOCAL).integers(len(bottom)))]


@lru_cache(maxsize=64)
def _baseline(cfg: ExperimentConfig, seed: int) -> ManagedSeason:
    return play_managed_season(cfg, seed, ())


def run_experiment4(cfg: ExperimentConfig) -> ExperimentReport:
    """Expected-position gain of one optimizing bottom-half team over its paired baseline."""
    rows, dist_rows, decision_rows = [], [], []
    improvements = []
    for seed in cfg.seeds:
        world = setup_seed(cfg, seed).world
        team = focal_team(cfg, seed, world)
        base = _baseline(cfg, seed)
        opt = play_managed_season(cfg, seed, [team])
        b, o = expected_position(base.final, team), expected_position(opt.final, team)
        improvements.append(b - o)
        log.info("exp4 seed %d: %s %.3f -> %.3f", seed, team, b, o)
        rows.append([seed, team, b, o, b - o])
        rb, ro = base.final.row(team), opt.final.row(team)
        dist_rows += [[seed, team, r + 1, rb[r], ro[r]] for r in range(len(rb))]
        decision_rows += [[seed, d.week, d.team_id, d.policy.value, d.tactic.style, d.tactic.formation,
                           d.expected_payoff] for d in opt.decisions]
    imp = np.array(improvements)
    metrics = {
        "mean_improvement": float(imp.mean()),
        "seeds_improved": int((imp > 0).sum()),
        "sign_test_p_value": float(stats.binomtest(int((imp > 0).sum()), len(imp), 0.5,
                                                   alternative="greater").pvalue),
        "mean_baseline_position": float(np.mean([r[2] for r in rows])),
        "mean_optimized_position": float(np.mean([r[3] for r in rows])),
    }
    return ExperimentReport("exp4", cfg, metrics, {
        "exp4_improvement.csv": (["seed", "team_id", "baseline_expected", "optimized_expected",
                                  "improvement"], rows),
        "exp4_distribution.csv": (["seed", "team_id", "rank", "p_baseline", "p_optimized"], dist_rows),
        "exp4_decisions.csv": (["seed", "week", "team_id", "policy", "our_style", "our_formation",
                                "expected_payoff"], decision_rows),
    }, [setup_seed(cfg, s).world for s in cfg.seeds])


def run_all_teams_arm(cfg: ExperimentConfig, nobody: bool = False) -> ExperimentReport:
    """Every team optimizes (or, with ``nobody``, none does) against the uniform baseline."""
    rows = []
    shifts, focal_all, focal_one = [], [], []
    for seed in cfg.seeds:
        world = setup_seed(cfg, seed).world
        base = _baseline(cfg, seed)
        arm = play_managed_season(cfg, seed, [] if nobody else world.team_ids)
        seed_shift = []
        for t in world.team_ids:
            b, a = expected_position(base.final, t), expected_position(arm.final, t)
            rows.append([seed, t, b, a, b - a])
            seed_shift.append(abs(b - a))
        shifts.append(float(np.mean(seed_shift)))
        log.info("all-teams seed %d: mean |shift| %.3f", seed, shifts[-1])
        team = focal_team(cfg, seed, world)
        focal_all.append(expected_position(base.final, team) - expected_position(arm.final, team))
        one = play_managed_season(cfg, seed, [team])
        focal_one.append(expected_position(base.final, team) - expected_position(one.final, team))
    metrics = {
        "mean_abs_shift": float(np.mean(shifts)),
        "max_seed_mean_abs_shift": float(np.max(shifts)),
        "focal_improvement_all_teams_arm": float(np.mean(focal_all)),
        "focal_improvement_one_team_arm": float(np.mean(focal_one)),
    }
    return ExperimentReport("all_teams", cfg, metrics, {
        "all_teams_shift.csv": (["seed", "team_id", "baseline_expected", "arm_expected", "improvement"], rows),
    }, [setup_seed(cfg, s).world for s in cfg.seeds])
