"""Monte-Carlo simulation of the remaining fixtures of a season.

Replicate ``r`` is a pure function of the key ``derive(seed_key(base_seed), r)``:
each remaining fixture draws one uniform from that key's outcome stream
(indexed by the fixture's position in the full schedule) and ties on points
are ordered by the key's tie stream.  Counts from any partition of the
replicate range merge by addition, so worker count never changes the output.
"""
from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels, rng
from .league_core import (
    Fixture, Outcome, Result, StandingsTable, check_results, rank_table, tally, team_ids_of,
)
from .outcome_model import OutcomeDistribution

FixturePredictor = Callable[[Fixture], "OutcomeDistribution | Sequence[float]"]


@dataclass(frozen=True)
class SimulationConfig:
    n_replicates: int = 100_000
    base_seed: int = 0
    workers: int = 1
    backend: str | None = None

    def __post_init__(self):
        if self.n_replicates < 1:
            raise ValueError("n_replicates must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True, eq=False)
class PositionDistribution:
    """Finishing-rank counts; ``counts[i, r]`` is how often team i finished r+1."""
    team_ids: tuple[str, ...]
    counts: np.ndarray
    n_replicates: int
    base_seed: int = 0
    outcome_counts: np.ndarray | None = field(default=None, repr=False)

    @property
    def matrix(self) -> np.ndarray:
        return self.counts / self.n_replicates

    @property
    def n_teams(self) -> int:
        return len(self.team_ids)

    def index(self, team_id: str) -> int:
        try:
            return self.team_ids.index(team_id)
        except ValueError:
            raise LookupError(f"unknown team {team_id!r}") from None

    def row(self, team_id: str) -> np.ndarray:
        return self.matrix[self.index(team_id)]

    def is_doubly_stochastic(self) -> bool:
        """Exact on integer counts; within float tolerance for explicit matrices."""
        rows, cols = self.counts.sum(axis=1), self.counts.sum(axis=0)
        n = self.n_replicates
        if np.issubdtype(self.counts.dtype, np.integer):
            return bool((rows == n).all() and (cols == n).all())
        return bool(np.allclose(rows, n) and np.allclose(cols, n))

    @classmethod
    def from_probabilities(cls, team_ids: Sequence[str], matrix) -> "PositionDistribution":
        """Wrap an explicit probability matrix (rows are teams, columns ranks)."""
        return cls(tuple(team_ids), np.asarray(matrix, dtype=float), 1)


# ---------------------------------------------------------------------------


def _probs(pred, fixture: Fixture) -> np.ndarray:
    p = pred(fixture)
    if isinstance(p, OutcomeDistribution):
        return p.as_array()
    return np.asarray(p, dtype=float)


@dataclass(frozen=True, eq=False)
class RemainingState:
    """Arrays the kernels consume, built once per simulation."""
    team_ids: tuple[str, ...]
    base_points: np.ndarray
    fixture_ids: np.ndarray
    home: np.ndarray
    away: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    fixtures: tuple[Fixture, ...]


def prepare(schedule: Sequence[Fixture], completed: Iterable[Result],
            predictor: FixturePredictor | None = None, team_ids: Sequence[str] | None = None,
            probs: np.ndarray | None = None) -> RemainingState:
    """Validate inputs and lay out the remaining fixtures.

    Either ``predictor`` (called once per remaining fixture) or ``probs``
    (one row per remaining fixture, in schedule order) supplies the outcome
    distributions.
    """
    completed = list(completed)
    check_results(schedule, completed)
    ids = tuple(team_ids) if team_ids is not None else tuple(team_ids_of(schedule))
    index = {t: i for i, t in enumerate(ids)}
    done = {r.fixture for r in completed}
    base_points, *_ = tally(ids, completed)
    remaining = [(fid, fx) for fid, fx in enumerate(schedule) if fx not in done]
    if probs is None:
        if predictor is None:
            raise ValueError("need a predictor or a probability array")
        p = np.array([_probs(predictor, fx) for _, fx in remaining]).reshape(-1, 3)
    else:
        p = np.asarray(probs, dtype=float).reshape(-1, 3)
        if len(p) != len(remaining):
            raise ValueError(f"{len(p)} probability rows for {len(remaining)} remaining fixtures")
    c1 = np.ascontiguousarray(p[:, 0])
    c2 = np.ascontiguousarray(p[:, 0] + p[:, 1])
    return RemainingState(
        ids,
        np.ascontiguousarray(base_points, dtype=np.int64),
        np.array([fid for fid, _ in remaining], dtype=np.uint64),
        np.array([index[fx.home] for _, fx in remaining], dtype=np.int64),
        np.array([index[fx.away] for _, fx in remaining], dtype=np.int64),
        c1, c2, tuple(fx for _, fx in remaining),
    )


def run_state(state: RemainingState, config: SimulationConfig) -> PositionDistribution:
    _, kernel = kernels.get_backend(config.backend)
    base_key = rng.seed_key(config.base_seed)
    n = config.n_replicates
    bounds = np.linspace(0, n, config.workers + 1).astype(int)
    spans = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]

    def job(span):
        return kernel(state.c1, state.c2, state.home, state.away, state.fixture_ids,
                      state.base_points, base_key, span[0], span[1])

    if len(spans) == 1:
        parts = [job(spans[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(spans)) as pool:
            parts = list(pool.map(job, spans))
    counts = sum(p[0] for p in parts)
    outcome_counts = sum(p[1] for p in parts)
    return PositionDistribution(state.team_ids, counts, n, config.base_seed, outcome_counts)


def simulate_remaining(schedule: Sequence[Fixture], completed: Iterable[Result],
                       predictor: FixturePredictor | None, config: SimulationConfig,
                       team_ids: Sequence[str] | None = None,
                       probs: np.ndarray | None = None) -> PositionDistribution:
    state = prepare(schedule, completed, predictor, team_ids, probs)
    return run_state(state, config)


def sample_replicate(schedule: Sequence[Fixture], completed: Iterable[Result],
                     predictor: FixturePredictor, replicate_seed: int,
                     team_ids: Sequence[str] | None = None) -> StandingsTable:
    """One replicate, in plain Python: the reference the kernels are checked against.

    ``replicate_seed`` is a replicate key, e.g. ``rng.replicate_key(base_seed, r)``.
    """
    completed = list(completed)
    check_results(schedule, completed)
    ids = tuple(team_ids) if team_ids is not None else tuple(team_ids_of(schedule))
    done = {r.fixture for r in completed}
    okey = rng.stream(replicate_seed, rng.SALT_OUTCOME)
    results = list(completed)
    for fid, fx in enumerate(schedule):
        if fx in done:
            continue
        p = _probs(predictor, fx)
        c1, c2 = float(p[0]), float(p[0]) + float(p[1])
        u = rng.uniform(okey, fid)
        outcome = Outcome.HOME_WIN if u < c1 else Outcome.DRAW if u < c2 else Outcome.AWAY_WIN
        results.append(Result(fx, outcome))
    points, played, wins, draws = tally(ids, results)
    ranks = rank_table(points, replicate_seed)
    return StandingsTable(ids, points, played, wins, draws, ranks)


# ---------------------------------------------------------------------------
# summaries


def expected_position(dist: PositionDistribution, team_id: str) -> float:
    row = dist.row(team_id)
    return float(np.dot(np.arange(1, len(row) + 1), row))


def modal_position(dist: PositionDistribution, team_id: str) -> int:
    return int(np.argmax(dist.counts[dist.index(team_id)])) + 1


def position_difference_curve(final_ranks: dict[str, int] | StandingsTable,
                              weekly: Sequence[PositionDistribution],
                              predicted: str = "modal") -> list[float]:
    """Per week, mean over teams of |actual rank - predicted rank|.

    ``predicted`` is ``"modal"`` (argmax of the distribution row) or
    ``"expected"`` (its mean).
    """
    if isinstance(final_ranks, StandingsTable):
        final_ranks = {t: final_ranks.rank_of(t) for t in final_ranks.team_ids}
    pick = {"modal": modal_position, "expected": expected_position}[predicted]
    return [float(np.mean([abs(final_ranks[t] - pick(d, t)) for t in d.team_ids]))
            for d in weekly]


def write_distribution_csv(path: str | Path, dist: PositionDistribution) -> None:
    m = dist.matrix
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# n_replicates={dist.n_replicates},base_seed={dist.base_seed}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["team_id", "rank", "probability"])
        for i, t in enumerate(dist.team_ids):
            for r in range(dist.n_teams):
                w.writerow([t, r + 1, repr(float(m[i, r]))])


def read_distribution_csv(path: str | Path) -> PositionDistribution:
    with open(path, encoding="utf-8") as fh:
        meta_line = fh.readline().lstrip("#").strip()
        meta = dict(kv.split("=", 1) for kv in meta_line.split(","))
        rows = list(csv.DictReader(fh))
    ids = list(dict.fromkeys(r["team_id"] for r in rows))
    n = int(meta["n_replicates"])
    m = np.zeros((len(ids), len(ids)))
    for r in rows:
        m[ids.index(r["team_id"]), int(r["rank"]) - 1] = float(r["probability"])
    counts = np.rint(m * n).astype(np.int64)
    return PositionDistribution(tuple(ids), counts, n, int(meta["base_seed"]))
