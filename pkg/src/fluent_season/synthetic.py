"""Seeded synthetic leagues with known ground truth.

True outcome model: an ordered logit on

    eta = home_adv + scale * ((att_h - def_a) - (att_a - def_h))
          + main[x_h] - main[x_a] + inter[x_h, x_a]

where ``x`` is a style/formation pair index, ``main`` is additive over style
and formation and ``inter`` is antisymmetric.  Everything is drawn from the
generator seed and persisted with experiment outputs.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import rng
from .league_core import Fixture, Outcome, Result, Team, generate_schedule
from .outcome_model import MatchContext, TacticCatalog, TrainingExample, ordered_logit


@dataclass(frozen=True)
class GeneratorParams:
    n_teams: int = 20
    n_styles: int = 2
    n_formations: int = 2
    strength_sigma: float = 0.3
    strength_scale: float = 1.2
    home_advantage: float = 0.3
    draw_margin: float = 0.55
    style_effect: float = 0.25
    formation_effect: float = 0.25
    interaction_effect: float = 0.35

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class PlayedMatch:
    fixture: Fixture
    fixture_id: int
    home_tactic: int
    away_tactic: int
    outcome: Outcome

    @property
    def result(self) -> Result:
        return Result(self.fixture, self.outcome)


@dataclass(frozen=True, eq=False)
class World:
    params: GeneratorParams
    seed: int
    teams: dict[str, Team]
    main_effect: np.ndarray          # (n_pairs,)
    interaction: np.ndarray          # (n_pairs, n_pairs), antisymmetric
    schedule: list[Fixture] = field(repr=False)

    @property
    def catalog(self) -> TacticCatalog:
        return TacticCatalog(self.params.n_styles, self.params.n_formations)

    @property
    def team_ids(self) -> list[str]:
        return list(self.teams)

    def eta(self, home: str, away: str, xh, xa):
        h, a = self.teams[home], self.teams[away]
        base = h.home_advantage + self.params.strength_scale * (
            (h.attack_strength - a.defence_strength) - (a.attack_strength - h.defence_strength))
        xh, xa = np.asarray(xh), np.asarray(xa)
        return base + self.main_effect[xh] - self.main_effect[xa] + self.interaction[xh, xa]

    def probs(self, home: str, away: str, xh, xa) -> np.ndarray:
        return ordered_logit(self.eta(home, away, xh, xa), self.params.draw_margin)

    def table(self, home: str, away: str) -> np.ndarray:
        """True outcome probabilities for all tactic combinations, ``(K, K, 3)``."""
        k = self.catalog.n_pairs
        xh, xa = np.meshgrid(np.arange(k), np.arange(k), indexing="ij")
        return self.probs(home, away, xh, xa)

    def marginal(self, home: str, away: str, home_tactic: int | None = None,
                 away_tactic: int | None = None) -> np.ndarray:
        """True probabilities with unspecified sides drawing tactics uniformly."""
        t = self.table(home, away)
        t = t.mean(axis=0) if home_tactic is None else t[home_tactic]
        return t.mean(axis=0) if away_tactic is None else t[away_tactic]

    def strength_order(self) -> list[str]:
        """Team ids from strongest to weakest by true combined strength."""
        total = {t: tm.attack_strength + tm.defence_strength for t, tm in self.teams.items()}
        return sorted(total, key=lambda t: (-total[t], t))


def make_world(params: GeneratorParams, seed: int) -> World:
    gen = rng.generator(seed, 0x57)
    n = params.n_teams
    att = gen.lognormal(0.0, params.strength_sigma, n)
    dfc = gen.lognormal(0.0, params.strength_sigma, n)
    teams = {
        f"T{i:02d}": Team(f"T{i:02d}", f"Team {i:02d}", float(att[i]), float(dfc[i]),
                          params.home_advantage)
        for i in range(n)
    }
    cat = TacticCatalog(params.n_styles, params.n_formations)
    style = gen.normal(0.0, params.style_effect, params.n_styles) if params.style_effect else np.zeros(params.n_styles)
    form = gen.normal(0.0, params.formation_effect, params.n_formations) if params.formation_effect else np.zeros(params.n_formations)
    main = np.array([style[p.style] + form[p.formation] for p in cat.pairs()])
    k = cat.n_pairs
    if params.interaction_effect:
        raw = gen.normal(0.0, params.interaction_effect, (k, k))
        inter = (raw - raw.T) / np.sqrt(2.0)
    else:
        inter = np.zeros((k, k))
    schedule = generate_schedule(list(teams), seed)
    return World(params, seed, teams, main, inter, schedule)


def uniform_tactic(key: int, fixture_id: int, side: int, n_pairs: int) -> int:
    """Counter-based uniform tactic draw for one side of one fixture."""
    u = rng.uniform(rng.stream(key, rng.SALT_TACTIC), 2 * fixture_id + side)
    return min(int(u * n_pairs), n_pairs - 1)


def outcome_uniform(key: int, fixture_id: int) -> float:
    return rng.uniform(rng.stream(key, rng.SALT_OUTCOME), fixture_id)


def draw_outcome(p: np.ndarray, u: float) -> Outcome:
    c1 = float(p[0])
    c2 = float(p[0]) + float(p[1])
    if u < c1:
        return Outcome.HOME_WIN
    if u < c2:
        return Outcome.DRAW
    return Outcome.AWAY_WIN


def play_season(world: World, key: int, schedule: Sequence[Fixture] | None = None) -> list[PlayedMatch]:
    """A full season with every team drawing tactics uniformly."""
    schedule = world.schedule if schedule is None else schedule
    k = world.catalog.n_pairs
    played = []
    for fid, fx in enumerate(schedule):
        xh = uniform_tactic(key, fid, 0, k)
        xa = uniform_tactic(key, fid, 1, k)
        p = world.probs(fx.home, fx.away, xh, xa)
        played.append(PlayedMatch(fx, fid, xh, xa, draw_outcome(p, outcome_uniform(key, fid))))
    return played


def history(world: World, n_seasons: int, key: int) -> list[PlayedMatch]:
    """Earlier seasons of the same league (fresh schedules, uniform tactics)."""
    matches = []
    for s in range(n_seasons):
        sched = generate_schedule(world.team_ids, rng.seed_key(world.seed, 0x415, s))
        matches += play_season(world, rng.derive(key, s), sched)
    return matches


def training_examples(world: World, matches: Sequence[PlayedMatch],
                      teams: dict[str, Team] | None = None) -> list[TrainingExample]:
    teams = world.teams if teams is None else teams
    cat = world.catalog
    return [
        TrainingExample(
            MatchContext(teams[m.fixture.home], teams[m.fixture.away],
                         cat.pair(m.home_tactic), cat.pair(m.away_tactic)),
            m.outcome)
        for m in matches
    ]
