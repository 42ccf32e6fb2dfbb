"""Tactic-pair effectiveness weights learned from played and observed games.

``w[x, y]`` averages two win rates of our style/formation pair ``x`` against
opposition pair ``y``: one from our own games, one from games we watched.
A cell with no evidence keeps its initial value (1, or a carried-over
matrix).
"""
from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np

from .league_core import Outcome


class ShapeError(ValueError):
    pass


class Source(enum.Enum):
    PLAYED = "played"
    OBSERVED = "observed"


class GameObservation(NamedTuple):
    source: Source
    actor_pair: int
    opponent_pair: int
    won: bool
    drawn: bool = False


def side_observations(home_pair: int, away_pair: int, outcome: Outcome,
                      source: Source = Source.OBSERVED) -> tuple[GameObservation, GameObservation]:
    """One observation per side of a game (home perspective first)."""
    drawn = outcome is Outcome.DRAW
    return (
        GameObservation(source, home_pair, away_pair, outcome is Outcome.HOME_WIN, drawn),
        GameObservation(source, away_pair, home_pair, outcome is Outcome.AWAY_WIN, drawn),
    )


class CellEvidence(NamedTuple):
    played_games: int = 0
    played_wins: int = 0
    observed_games: int = 0
    observed_wins: int = 0
    played_draws: int = 0
    observed_draws: int = 0


@dataclass(frozen=True, eq=False)
class EvidenceCounts:
    """Per-cell counts, each an ``(n_pairs, n_pairs)`` int array; treat as immutable."""
    played_games: np.ndarray
    played_wins: np.ndarray
    played_draws: np.ndarray
    observed_games: np.ndarray
    observed_wins: np.ndarray
    observed_draws: np.ndarray

    @classmethod
    def empty(cls, n_pairs: int) -> "EvidenceCounts":
        z = lambda: np.zeros((n_pairs, n_pairs), dtype=np.int64)  # noqa: E731
        return cls(z(), z(), z(), z(), z(), z())

    @property
    def n_pairs(self) -> int:
        return self.played_games.shape[0]

    def cell(self, x: int, y: int) -> CellEvidence:
        return CellEvidence(int(self.played_games[x, y]), int(self.played_wins[x, y]),
                            int(self.observed_games[x, y]), int(self.observed_wins[x, y]),
                            int(self.played_draws[x, y]), int(self.observed_draws[x, y]))

    def total(self) -> int:
        return int(self.played_games.sum() + self.observed_games.sum())


def _check_pair(counts: EvidenceCounts, *pairs: int) -> None:
    for p in pairs:
        if not 0 <= p < counts.n_pairs:
            raise IndexError(f"pair index {p} outside [0, {counts.n_pairs})")


def record_observation(counts: EvidenceCounts, obs: GameObservation) -> EvidenceCounts:
    """Return new counts with one more game (and win or draw) in the observation's cell."""
    return record_observations(counts, [obs])


def record_observations(counts: EvidenceCounts, observations: Iterable[GameObservation]) -> EvidenceCounts:
    arrays = {name: getattr(counts, name).copy() for name in (
        "played_games", "played_wins", "played_draws",
        "observed_games", "observed_wins", "observed_draws")}
    for obs in observations:
        _check_pair(counts, obs.actor_pair, obs.opponent_pair)
        pre = "played" if obs.source is Source.PLAYED else "observed"
        cell = (obs.actor_pair, obs.opponent_pair)
        arrays[f"{pre}_games"][cell] += 1
        if obs.won:
            arrays[f"{pre}_wins"][cell] += 1
        elif obs.drawn:
            arrays[f"{pre}_draws"][cell] += 1
    return replace(counts, **arrays)


def compute_weight(cell: CellEvidence, draw_credit: float = 0.0, prior: float = 1.0) -> float:
    """Mean of the played and observed win rates that have games behind them.

    ``draw_credit`` counts a draw as that fraction of a win (0 by default).
    With no games in either source the ``prior`` (initial weight) is returned.
    """
    rates = []
    if cell.played_games > 0:
        rates.append((cell.played_wins + draw_credit * cell.played_draws) / cell.played_games)
    if cell.observed_games > 0:
        rates.append((cell.observed_wins + draw_credit * cell.observed_draws) / cell.observed_games)
    if not rates:
        return prior
    return sum(rates) / len(rates)


def init_weights(n_pairs: int, carried: np.ndarray | None = None) -> np.ndarray:
    if carried is not None:
        carried = np.array(carried, dtype=float)
        if carried.shape != (n_pairs, n_pairs):
            raise ShapeError(f"carried matrix has shape {carried.shape}, want ({n_pairs}, {n_pairs})")
        if (carried < 0).any():
            raise ValueError("weights must be non-negative")
        return carried
    if n_pairs < 1:
        raise ValueError("n_pairs must be >= 1")
    return np.ones((n_pairs, n_pairs))


def weight_matrix(counts: EvidenceCounts, draw_credit: float = 0.0,
                  prior: np.ndarray | None = None) -> np.ndarray:
    """``compute_weight`` over every cell; ``prior`` defaults to all ones."""
    base = init_weights(counts.n_pairs, prior)
    pg, og = counts.played_games, counts.observed_games
    with np.errstate(invalid="ignore", divide="ignore"):
        pr = (counts.played_wins + draw_credit * counts.played_draws) / pg
        orate = (counts.observed_wins + draw_credit * counts.observed_draws) / og
    has_p, has_o = pg > 0, og > 0
    w = np.where(has_p & has_o, (pr + orate) / 2,
                 np.where(has_p, pr, np.where(has_o, orate, base)))
    return w


def apply_weights(payoffs: np.ndarray, weights: np.ndarray, opponent_pair: int) -> np.ndarray:
    """Scale our per-action scalar payoffs (indexed by our pair) by ``w[:, opponent_pair]``."""
    payoffs = np.asarray(payoffs, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if weights.ndim != 2 or payoffs.shape != (weights.shape[0],):
        raise ShapeError(f"payoffs {payoffs.shape} do not match weights {weights.shape}")
    if not 0 <= opponent_pair < weights.shape[1]:
        raise IndexError(f"opponent pair {opponent_pair} out of range")
    return payoffs * weights[:, opponent_pair]


def write_weights_csv(path: str | Path, counts: EvidenceCounts, draw_credit: float = 0.0,
                      prior: np.ndarray | None = None) -> None:
    w = weight_matrix(counts, draw_credit, prior)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["our_pair", "opp_pair", "weight", "played_games", "played_wins",
                      "observed_games", "observed_wins"])
        n = counts.n_pairs
        for x in range(n):
            for y in range(n):
                c = counts.cell(x, y)
                out.writerow([x, y, repr(float(w[x, y])), c.played_games, c.played_wins,
                              c.observed_games, c.observed_wins])
