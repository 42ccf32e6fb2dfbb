"""Objective bands, their probabilities, and the weekly MAP objective."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .season_sim import PositionDistribution


class ObjectiveBand(NamedTuple):
    id: str
    label: str
    lo: int
    hi: int

    def contains(self, rank: int) -> bool:
        return self.lo <= rank <= self.hi


EPL_BANDS = (
    ObjectiveBand("o1", "Win the league", 1, 1),
    ObjectiveBand("o2", "Champions League", 2, 4),
    ObjectiveBand("o3", "Europa League", 5, 7),
    ObjectiveBand("o4", "Top half", 8, 10),
    ObjectiveBand("o5", "Avoid relegation", 11, 17),
)


def default_bands(n_teams: int = 20) -> tuple[ObjectiveBand, ...]:
    if n_teams != 20:
        raise ValueError(f"default bands are defined for 20 teams; pass explicit bands for {n_teams}")
    return EPL_BANDS


def validate_bands(bands: Sequence[ObjectiveBand], n_teams: int) -> None:
    prev_hi = 0
    for b in bands:
        if not 1 <= b.lo <= b.hi <= n_teams:
            raise ValueError(f"band {b.id} [{b.lo},{b.hi}] outside 1..{n_teams}")
        if b.lo <= prev_hi:
            raise ValueError(f"band {b.id} overlaps or is out of order")
        prev_hi = b.hi


def scaled_bands(n_teams: int) -> tuple[ObjectiveBand, ...]:
    """Proportional analogue of the 20-team bands for other (even) league sizes."""
    if n_teams == 20:
        return EPL_BANDS
    if n_teams < 10:
        raise ValueError("scaled bands need at least 10 teams")
    cuts = [round(c * n_teams / 20) for c in (1, 4, 7, 10, 17)]
    bands, lo = [], 1
    for b, hi in zip(EPL_BANDS, cuts):
        hi = max(hi, lo)
        bands.append(ObjectiveBand(b.id, b.label, lo, hi))
        lo = hi + 1
    validate_bands(bands, n_teams)
    return tuple(bands)


@dataclass(frozen=True)
class ObjectiveProbabilities:
    band_ids: tuple[str, ...]
    probs: tuple[float, ...]
    residual: float

    def __getitem__(self, band_id: str) -> float:
        return self.probs[self.band_ids.index(band_id)]

    @property
    def at_risk(self) -> bool:
        """All mass sits outside every band (relegation region)."""
        return not any(p > 0 for p in self.probs)

    def scaled(self, c: float) -> "ObjectiveProbabilities":
        return ObjectiveProbabilities(self.band_ids, tuple(p * c for p in self.probs), self.residual * c)


@dataclass(frozen=True)
class FluentObjective:
    week: int
    objective: str
    at_risk: bool = False


def band_probabilities(row: np.ndarray, bands: Sequence[ObjectiveBand]) -> ObjectiveProbabilities:
    """Band masses of one finishing-rank distribution (index 0 is rank 1)."""
    row = np.asarray(row, dtype=float)
    probs = tuple(float(row[b.lo - 1:b.hi].sum()) for b in bands)
    covered = np.zeros(len(row), dtype=bool)
    for b in bands:
        covered[b.lo - 1:b.hi] = True
    return ObjectiveProbabilities(tuple(b.id for b in bands), probs, float(row[~covered].sum()))


def objective_probabilities(dist: PositionDistribution, team_id: str,
                            bands: Sequence[ObjectiveBand] = EPL_BANDS) -> ObjectiveProbabilities:
    return band_probabilities(dist.row(team_id), bands)


def map_objective(probs: ObjectiveProbabilities) -> str:
    """Band with the largest probability; exact ties go to the more ambitious band.

    If every band has zero mass the least ambitious band is returned and
    ``probs.at_risk`` is true.
    """
    if probs.at_risk:
        return probs.band_ids[-1]
    return probs.band_ids[int(np.argmax(probs.probs))]


def set_objective(week: int, probs: ObjectiveProbabilities) -> FluentObjective:
    return FluentObjective(week, map_objective(probs), probs.at_risk)


def band_by_id(band_id: str, bands: Sequence[ObjectiveBand] = EPL_BANDS) -> ObjectiveBand:
    for b in bands:
        if b.id == band_id:
            return b
    raise LookupError(f"unknown objective {band_id!r}")


def objective_met(objective: str, final_rank: int,
                  bands: Sequence[ObjectiveBand] = EPL_BANDS) -> bool:
    """Met when the team finishes at or above the band's lowest rank."""
    return final_rank <= band_by_id(objective, bands).hi


def realized_band(final_rank: int, bands: Sequence[ObjectiveBand] = EPL_BANDS) -> str | None:
    for b in bands:
        if b.contains(final_rank):
            return b.id
    return None


def objective_accuracy_curve(weekly: Sequence[Mapping[str, str]], final_ranks: Mapping[str, int],
                             bands: Sequence[ObjectiveBand] = EPL_BANDS) -> list[float]:
    """Per week, the percentage of teams whose objective that week was met."""
    curve = []
    for week_objs in weekly:
        met = [objective_met(o, final_ranks[t], bands) for t, o in week_objs.items()]
        curve.append(100.0 * sum(met) / len(met))
    return curve


def max_accuracy(n_teams: int, bands: Sequence[ObjectiveBand] = EPL_BANDS) -> float:
    """Upper bound on the accuracy curve: teams finishing below every band always fail."""
    worst = max(b.hi for b in bands)
    return 100.0 * worst / n_teams


class TraceRow(NamedTuple):
    week: int
    team_id: str
    objective: str
    probs: ObjectiveProbabilities


def write_trace_csv(path: str | Path, rows: Iterable[TraceRow]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["week", "team_id", "objective", "p_o1", "p_o2", "p_o3", "p_o4", "p_o5", "residual"])
        for r in rows:
            w.writerow([r.week, r.team_id, r.objective,
                        *(repr(float(p)) for p in r.probs.probs), repr(float(r.probs.residual))])
