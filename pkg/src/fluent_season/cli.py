"""``fluent-season`` command line."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import experiments
from .config import ExperimentConfig, dump_config, load_config
from .ingest import ParseError, ValidationError, ingest_data
from .objectives import EPL_BANDS, band_probabilities, map_objective, scaled_bands
from .outcome_model import FitError, TacticCatalog, fit_strengths
from .prior_knowledge import (
    EvidenceCounts, Source, record_observations, side_observations, write_weights_csv,
)
from .season_sim import (
    SimulationConfig, expected_position, modal_position, read_distribution_csv,
    simulate_remaining, write_distribution_csv,
)

FULL_REPLICATES = 100_000

EXPERIMENTS = {
    "exp1": experiments.run_experiment1,
    "exp2": experiments.run_experiment2,
    "exp3": experiments.run_experiment3,
    "exp4": experiments.run_experiment4,
    "all-teams": experiments.run_all_teams_arm,
}


def _common(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--config", type=Path, default=d, help="flat key = value config file")
    p.add_argument("--seed", type=int, default=d, help="base seed (overrides config)")
    p.add_argument("--out", type=Path, default=d, help="output directory")
    p.add_argument("--workers", type=int, default=d, help="threads for replicate batches")
    p.add_argument("--replicates", type=int, default=d, help="replicates per simulation")
    p.add_argument("--full-scale", action="store_true", default=d,
                   help=f"use {FULL_REPLICATES:,} replicates per simulation")
    p.add_argument("-v", "--verbose", action="store_true", default=d)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fluent-season", description=__doc__)
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        _common(p, suppress=True)
        return p

    p = add("simulate", help="finishing-position distribution for a league in progress")
    p.add_argument("--fixtures", type=Path, required=True)
    p.add_argument("--results", type=Path)
    p.add_argument("--predictor", choices=["fit", "equal"], default="fit",
                   help="fit: ordered logit on the played results; equal: 1/3 each outcome")

    p = add("objective", help="band probabilities and MAP objective from a distribution CSV")
    p.add_argument("--distribution", type=Path, required=True)
    p.add_argument("--team", action="append", help="team id (repeatable; default all)")

    p = add("weights", help="tactic weight matrix for one team from a tactics CSV")
    p.add_argument("--fixtures", type=Path, required=True)
    p.add_argument("--results", type=Path, required=True)
    p.add_argument("--tactics", type=Path, required=True)
    p.add_argument("--team", required=True)
    p.add_argument("--n-styles", type=int, default=2)
    p.add_argument("--n-formations", type=int, default=2)
    p.add_argument("--draw-credit", type=float, default=0.0)

    for name, fn in EXPERIMENTS.items():
        add(name, help=(fn.__doc__ or name).strip().splitlines()[0])

    p = add("compare", help="metric differences between two summaries with equal config hashes")
    p.add_argument("summaries", type=Path, nargs=2)

    add("show-config", help="print the effective configuration")
    return parser


def _opt(args, name):
    return getattr(args, name, None)


def resolve_config(args) -> ExperimentConfig:
    cfg = load_config(args.config) if _opt(args, "config") else ExperimentConfig()
    changes = {}
    if _opt(args, "seed") is not None:
        changes["base_seed"] = args.seed
    if _opt(args, "workers") is not None:
        changes["workers"] = args.workers
    if _opt(args, "full_scale"):
        changes["replicates"] = changes["final_replicates"] = FULL_REPLICATES
    if _opt(args, "replicates") is not None:
        changes["replicates"] = args.replicates
    return cfg.with_(**changes)


def _out(args) -> Path:
    return _opt(args, "out") or Path("out")


def cmd_simulate(args, cfg: ExperimentConfig) -> int:
    state = ingest_data(args.fixtures, args.results)
    probs = None
    predictor = None
    if args.predictor == "equal":
        remaining = len(state.fixtures) - len(state.results)
        probs = np.full((remaining, 3), 1 / 3)
    else:
        fitted = fit_strengths(state.results, state.team_ids)
        predictor = fitted
    sim = SimulationConfig(cfg.replicates, cfg.base_seed, cfg.workers)
    dist = simulate_remaining(state.fixtures, state.results, predictor, sim,
                              team_ids=state.team_ids, probs=probs)
    out = _out(args)
    out.mkdir(parents=True, exist_ok=True)
    write_distribution_csv(out / "distribution.csv", dist)
    for t in dist.team_ids:
        print(f"{t}\texpected={expected_position(dist, t):.3f}\tmodal={modal_position(dist, t)}")
    return 0


def cmd_objective(args, cfg: ExperimentConfig) -> int:
    dist = read_distribution_csv(args.distribution)
    bands = EPL_BANDS if dist.n_teams == 20 else scaled_bands(dist.n_teams)
    rows = []
    for t in args.team or dist.team_ids:
        p = band_probabilities(dist.row(t), bands)
        rows.append({"team_id": t, "objective": map_objective(p), "at_risk": p.at_risk,
                     **dict(zip(p.band_ids, p.probs)), "residual": p.residual})
    print(json.dumps(rows, indent=2))
    return 0


def cmd_weights(args, cfg: ExperimentConfig) -> int:
    state = ingest_data(args.fixtures, args.results, args.tactics, args.n_styles, args.n_formations)
    if args.team not in state.team_ids:
        raise ValidationError(f"unknown team {args.team!r}")
    cat = TacticCatalog(args.n_styles, args.n_formations)
    counts = EvidenceCounts.empty(cat.n_pairs)
    obs = []
    for r in state.results:
        if r.fixture not in state.tactics:
            continue
        hp, ap = state.tactics[r.fixture]
        src = Source.PLAYED if args.team in (r.fixture.home, r.fixture.away) else Source.OBSERVED
        pair = side_observations(cat.index(hp), cat.index(ap), r.outcome, src)
        if src is Source.PLAYED:
            obs.append(pair[0] if r.fixture.home == args.team else pair[1])
        else:
            obs += pair
    counts = record_observations(counts, obs)
    out = _out(args)
    out.mkdir(parents=True, exist_ok=True)
    write_weights_csv(out / "weights.csv", counts, args.draw_credit)
    print(out / "weights.csv")
    return 0


def cmd_experiment(args, cfg: ExperimentConfig) -> int:
    report = EXPERIMENTS[args.command](cfg)
    out = _out(args)
    report.write(out)
    (out / "config.txt").write_text(dump_config(cfg, semantic=True), encoding="utf-8")
    print(json.dumps(report.summary(), sort_keys=True, indent=2))
    return 0


def cmd_compare(args, cfg: ExperimentConfig) -> int:
    a, b = (experiments.load_summary(p) for p in args.summaries)
    print(json.dumps(experiments.compare_summaries(a, b), sort_keys=True, indent=2))
    return 0


def cmd_show_config(args, cfg: ExperimentConfig) -> int:
    sys.stdout.write(dump_config(cfg))
    print(f"# config_hash = {cfg.config_hash()}")
    return 0


COMMANDS = {
    "simulate": cmd_simulate,
    "objective": cmd_objective,
    "weights": cmd_weights,
    "compare": cmd_compare,
    "show-config": cmd_show_config,
    **{name: cmd_experiment for name in EXPERIMENTS},
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if _opt(args, "verbose") else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](args, cfg)
    except (ParseError, ValidationError, FitError, experiments.ReportMismatch,
            ValueError, LookupError, OSError) as exc:
        print(f"fluent-season: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
