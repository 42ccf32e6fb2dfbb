"""Pre-match tactic selection and a coarse in-match score-state chain."""
from __future__ import annotations

import csv
import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np

from . import rng
from .league_core import Fixture, Outcome, Result, Side
from .objectives import FluentObjective, ObjectiveProbabilities
from .outcome_model import OutcomeDistribution, TacticCatalog, TacticPair
from .prior_knowledge import GameObservation


class ConfigurationError(ValueError):
    pass


class DecisionPolicy(enum.Enum):
    BEST_RESPONSE = "best_response"
    SPITEFUL = "spiteful"
    EXPECTIMAX = "expectimax"


class InMatchPolicy(enum.Enum):
    AGGRESSIVE = "aggressive"
    RESERVED = "reserved"


class ScoreState(enum.IntEnum):
    LOSING = 0
    DRAWING = 1
    WINNING = 2


@dataclass(frozen=True)
class PolicyConfig:
    on_track_low: float = 0.4
    on_track_high: float = 0.75
    expectimax_mix: float = 0.5       # weight on the best-response scalar
    draw_threshold: float = 0.5
    aggression_delta: float = 0.05
    chain_mixing: float = 0.5
    decision_points: int = 3


DEFAULT_POLICY = PolicyConfig()


# ---------------------------------------------------------------------------
# payoff tables


@dataclass(frozen=True, eq=False)
class PayoffTable:
    """``cells[y, f, s]`` is p(h, d, a) when we play (style s, formation f)
    and the opposition plays pair ``y``."""
    catalog: TacticCatalog
    our_side: Side
    cells: np.ndarray

    def by_pair(self) -> np.ndarray:
        """Cells re-indexed as ``[our_pair, opp_pair, outcome]``."""
        k = self.catalog.n_pairs
        # pair index = style * n_formations + formation
        ours = self.cells.transpose(2, 1, 0, 3)      # s, f, y, o
        return ours.reshape(k, self.cells.shape[0], 3)

    def cell(self, ours: TacticPair, opp_pair: int) -> OutcomeDistribution:
        return OutcomeDistribution.from_array(self.cells[opp_pair, ours.formation, ours.style])


def build_payoff_table(fixture: Fixture, predictor, our_side: Side) -> PayoffTable:
    """Evaluate ``predictor.table`` (home pair x away pair) from one side's viewpoint."""
    cat = predictor.catalog
    if cat.n_pairs < 1:
        raise ConfigurationError("empty tactic catalog")
    t = np.asarray(predictor.table(fixture.home, fixture.away))
    ours = t if our_side is Side.HOME else t.transpose(1, 0, 2)   # [our, opp, o]
    k = cat.n_pairs
    cells = ours.reshape(cat.n_styles, cat.n_formations, k, 3).transpose(2, 1, 0, 3)
    return PayoffTable(cat, our_side, np.ascontiguousarray(cells))


def scalar_payoff(cell, policy: DecisionPolicy, our_side: Side, mix: float = 0.5):
    """Best response: p(our win).  Spiteful: 1 - p(opponent win).
    Expectimax: ``mix * best_response + (1 - mix) * spiteful``.

    ``cell`` may be an OutcomeDistribution or an array with a trailing axis of 3.
    """
    p = cell.as_array() if isinstance(cell, OutcomeDistribution) else np.asarray(cell, float)
    win_i, lose_i = (0, 2) if our_side is Side.HOME else (2, 0)
    best = p[..., win_i]
    spite = 1.0 - p[..., lose_i]
    if policy is DecisionPolicy.BEST_RESPONSE:
        out = best
    elif policy is DecisionPolicy.SPITEFUL:
        out = spite
    else:
        out = mix * best + (1.0 - mix) * spite
    return float(out) if np.ndim(out) == 0 else out


def select_policy(objective: FluentObjective | str, probs: ObjectiveProbabilities,
                  config: PolicyConfig = DEFAULT_POLICY) -> DecisionPolicy:
    band = objective.objective if isinstance(objective, FluentObjective) else objective
    p = probs[band]
    if p < config.on_track_low:
        return DecisionPolicy.BEST_RESPONSE
    if p > config.on_track_high:
        return DecisionPolicy.SPITEFUL
    return DecisionPolicy.EXPECTIMAX


class TacticChoice(NamedTuple):
    pair: TacticPair
    index: int
    expected_payoff: float
    values: np.ndarray


def action_values(table: PayoffTable, weights: np.ndarray, policy: DecisionPolicy,
                  belief: np.ndarray | None = None, mix: float = 0.5) -> np.ndarray:
    """``sum_y belief[y] * w[x, y] * scalar_payoff(cell[x, y])`` for every our-pair ``x``."""
    cells = table.by_pair()
    k_ours, k_opp = cells.shape[:2]
    if k_ours == 0 or k_opp == 0:
        raise ConfigurationError("empty tactic catalog")
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (k_ours, k_opp):
        raise ConfigurationError(f"weights {weights.shape} do not match table ({k_ours}, {k_opp})")
    belief = np.full(k_opp, 1.0 / k_opp) if belief is None else np.asarray(belief, dtype=float)
    s = scalar_payoff(cells, policy, table.our_side, mix)
    return (weights * s) @ belief


def choose_tactic(table: PayoffTable, weights: np.ndarray, policy: DecisionPolicy,
                  belief: np.ndarray | None = None, mix: float = 0.5) -> TacticChoice:
    """Argmax of the weighted expected payoff; ties go to the lowest pair index.

    Actions whose weight is zero wherever the belief has mass are never picked
    while some other action has positive weight.
    """
    v = action_values(table, weights, policy, belief, mix)
    w = np.asarray(weights, dtype=float)
    b = np.full(w.shape[1], 1.0 / w.shape[1]) if belief is None else np.asarray(belief, float)
    live = (w @ b) > 0
    x = int(np.argmax(np.where(live, v, -np.inf) if live.any() else v))
    return TacticChoice(table.catalog.pair(x), x, float(v[x]), v)


def frequency_belief(observations: Iterable[GameObservation], n_pairs: int,
                     smoothing: float = 1.0) -> np.ndarray:
    """Smoothed frequency of the pairs opponents were seen using."""
    counts = np.full(n_pairs, float(smoothing))
    for obs in observations:
        counts[obs.opponent_pair] += 1
    total = counts.sum()
    if total <= 0:
        return np.full(n_pairs, 1.0 / n_pairs)
    return counts / total


# ---------------------------------------------------------------------------
# in-match chain
#
# The chain lives on {losing, drawing, winning} from our side.  Its state at
# the first decision point is drawn from the pre-match distribution pi, and
# between decision points it moves by a reversible birth-death kernel that
# leaves pi invariant, so with no policy the final-whistle marginal is pi.
# A policy perturbs the row of the current state at each decision point.


def in_match_policy(state: ScoreState, draw_value: float,
                    threshold: float = DEFAULT_POLICY.draw_threshold) -> InMatchPolicy:
    """Aggressive when losing, reserved when winning; when drawing, reserved
    iff a draw keeps the objective probability at or above ``threshold``.

    ``draw_value`` is p(objective met | this match ends drawn), e.g. from
    :func:`conditional_objective_probability`.
    """
    if state is ScoreState.LOSING:
        return InMatchPolicy.AGGRESSIVE
    if state is ScoreState.WINNING:
        return InMatchPolicy.RESERVED
    return InMatchPolicy.RESERVED if draw_value >= threshold else InMatchPolicy.AGGRESSIVE


def base_transitions(pi: np.ndarray, mixing: float) -> np.ndarray:
    pl, pd, pw = (float(v) for v in pi)
    m = mixing
    return np.array([
        [1.0 - m * pd, m * pd, 0.0],
        [m * pl, 1.0 - m * (pl + pw), m * pw],
        [0.0, m * pd, 1.0 - m * pd],
    ])


def shifted_row(row: np.ndarray, state: ScoreState, policy: InMatchPolicy | None,
                delta: float) -> np.ndarray:
    """Move ``delta`` of probability onto the favoured transition, taking it
    proportionally from the others."""
    if policy is None or delta == 0.0:
        return row
    if policy is InMatchPolicy.AGGRESSIVE:
        if state is ScoreState.WINNING:
            return row
        target = int(state) + 1
    else:
        target = int(state)
    row = row.copy()
    new_t = min(1.0, row[target] + delta)
    rest = 1.0 - row[target]
    others = [j for j in range(3) if j != target]
    if rest > 0:
        scale = (1.0 - new_t) / rest
        for j in others:
            row[j] *= scale
    row[target] = new_t
    return row


PolicyFn = Callable[[ScoreState], "InMatchPolicy | None"]


def _our_pi(dist: OutcomeDistribution | np.ndarray, our_side: Side) -> np.ndarray:
    p = dist.as_array() if isinstance(dist, OutcomeDistribution) else np.asarray(dist, float)
    # (losing, drawing, winning)
    return np.array([p[2], p[1], p[0]]) if our_side is Side.HOME else np.array([p[0], p[1], p[2]])


def _to_outcome(state: int, our_side: Side) -> Outcome:
    if state == ScoreState.DRAWING:
        return Outcome.DRAW
    won = state == ScoreState.WINNING
    return Outcome.HOME_WIN if won == (our_side is Side.HOME) else Outcome.AWAY_WIN


def match_outcome_distribution(dist, our_side: Side, decision_points: int,
                               policy_fn: PolicyFn | None = None, delta: float = 0.05,
                               mixing: float = 0.5) -> OutcomeDistribution:
    """Exact final-whistle distribution of the chain (home/draw/away order)."""
    pi = _our_pi(dist, our_side)
    if decision_points <= 0:
        v = pi
    else:
        T = base_transitions(pi, mixing)
        v = pi.copy()
        for _ in range(decision_points):
            nxt = np.zeros(3)
            for s in range(3):
                st = ScoreState(s)
                pol = policy_fn(st) if policy_fn else None
                nxt += v[s] * shifted_row(T[s], st, pol, delta)
            v = nxt
    out = np.zeros(3)
    for s in range(3):
        out[_to_outcome(s, our_side).index] += v[s]
    return OutcomeDistribution.from_array(out / out.sum())


def _categorical(p: np.ndarray, u: float) -> int:
    c1 = float(p[0])
    c2 = float(p[0]) + float(p[1])
    return 0 if u < c1 else 1 if u < c2 else 2


def simulate_match_with_decisions(fixture: Fixture, tactics: tuple[TacticPair, TacticPair],
                                  predictor, weights: np.ndarray | None, decision_points: int,
                                  seed: int, our_side: Side = Side.HOME,
                                  policy_fn: PolicyFn | None = None,
                                  config: PolicyConfig = DEFAULT_POLICY) -> Outcome:
    """Sample one match through the score-state chain.

    ``tactics`` is (home pair, away pair).  The aggression delta is scaled by
    our weight against the opposition's pair (capped at 1), so a tactic that
    has never worked gains nothing from pushing.
    """
    home_t, away_t = tactics
    dist = predictor.predict(fixture.home, fixture.away, home_t, away_t)
    key = rng.stream(rng.seed_key(seed), rng.SALT_MATCH)
    if decision_points <= 0:
        return Outcome.from_index(_categorical(dist.as_array(), rng.uniform(key, 0)))
    delta = config.aggression_delta
    if weights is not None:
        cat = predictor.catalog
        ours, theirs = (home_t, away_t) if our_side is Side.HOME else (away_t, home_t)
        delta *= min(1.0, float(weights[cat.index(ours), cat.index(theirs)]))
    pi = _our_pi(dist, our_side)
    T = base_transitions(pi, config.chain_mixing)
    state = _categorical(pi, rng.uniform(key, 0))
    for k in range(decision_points):
        st = ScoreState(state)
        row = shifted_row(T[state], st, policy_fn(st) if policy_fn else None, delta)
        state = _categorical(row, rng.uniform(key, k + 1))
    return _to_outcome(state, our_side)


def conditional_objective_probability(schedule: Sequence[Fixture], completed: Sequence[Result],
                                      predictor, fixture: Fixture, team_id: str,
                                      band, sim_config) -> dict[Outcome, float]:
    """p(objective band met) for each forced result of ``fixture``, by simulation.

    ``band`` is an ObjectiveBand; met means finishing at or above its ``hi``.
    """
    from .season_sim import simulate_remaining

    out = {}
    for outcome in Outcome:
        d = simulate_remaining(schedule, [*completed, Result(fixture, outcome)], predictor, sim_config)
        row = d.row(team_id)
        out[outcome] = float(row[:band.hi].sum())
    return out


# ---------------------------------------------------------------------------


class DecisionRecord(NamedTuple):
    week: int
    team_id: str
    policy: DecisionPolicy
    tactic: TacticPair
    expected_payoff: float


def write_decision_log(path: str | Path, records: Iterable[DecisionRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["week", "team_id", "policy", "our_style", "our_formation", "expected_payoff"])
        for r in records:
            w.writerow([r.week, r.team_id, r.policy.value, r.tactic.style, r.tactic.formation,
                        repr(float(r.expected_payoff))])
