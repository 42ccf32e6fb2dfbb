"""Teams, double round-robin schedules, results and standings."""
from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from . import rng


class ScheduleError(ValueError):
    pass


class ConsistencyError(ValueError):
    pass


class Outcome(enum.Enum):
    HOME_WIN = "H"
    DRAW = "D"
    AWAY_WIN = "A"

    @property
    def index(self) -> int:
        return _OUTCOME_INDEX[self]

    @classmethod
    def from_index(cls, i: int) -> "Outcome":
        return _OUTCOMES[i]


_OUTCOMES = (Outcome.HOME_WIN, Outcome.DRAW, Outcome.AWAY_WIN)
_OUTCOME_INDEX = {o: i for i, o in enumerate(_OUTCOMES)}

# the result of a completed fixture
MatchResult = Outcome


class Side(enum.Enum):
    HOME = "home"
    AWAY = "away"


@dataclass(frozen=True)
class Team:
    id: str
    name: str = ""
    attack_strength: float = 1.0
    defence_strength: float = 1.0
    home_advantage: float = 0.0

    def __post_init__(self):
        if self.attack_strength <= 0 or self.defence_strength <= 0:
            raise ValueError(f"team {self.id!r}: strengths must be > 0")
        if self.home_advantage < 0:
            raise ValueError(f"team {self.id!r}: home_advantage must be >= 0")


class Fixture(NamedTuple):
    week: int
    home: str
    away: str


class Result(NamedTuple):
    fixture: Fixture
    outcome: Outcome

    @property
    def week(self) -> int:
        return self.fixture.week


def points_for(result: Outcome, side: Side) -> int:
    if result is Outcome.DRAW:
        return 1
    won = (result is Outcome.HOME_WIN) == (side is Side.HOME)
    return 3 if won else 0


# ---------------------------------------------------------------------------
# schedule


def _circle_rounds(n: int) -> list[list[tuple[int, int]]]:
    fixed = n - 1
    ring = list(range(n - 1))
    rounds = []
    for r in range(n - 1):
        left, right = ring[: n // 2], ring[n // 2:]
        first = (ring[0], fixed) if r % 2 == 0 else (fixed, ring[0])
        rounds.append([first, *zip(left[1:], reversed(right))])
        ring = right + left
    return rounds


def generate_schedule(teams: Sequence[Team | str], seed: int) -> list[Fixture]:
    """Double round-robin by the circle method over a seeded shuffle of ``teams``.

    The second half mirrors the first with venues swapped, so every ordered
    pair appears exactly once over ``2(n-1)`` weeks.
    """
    ids = [t.id if isinstance(t, Team) else str(t) for t in teams]
    n = len(ids)
    if n < 2 or n % 2:
        raise ScheduleError(f"need an even number of teams >= 2, got {n}")
    if len(set(ids)) != n:
        raise ScheduleError("team ids must be unique")
    order = [ids[i] for i in rng.generator(seed, 0x5C4ED).permutation(n)]
    rounds = _circle_rounds(n)
    fixtures = []
    for week, matches in enumerate(rounds):
        fixtures.extend(Fixture(week, order[h], order[a]) for h, a in matches)
    offset = len(rounds)
    for week, matches in enumerate(rounds):
        fixtures.extend(Fixture(week + offset, order[a], order[h]) for h, a in matches)
    return fixtures


def n_weeks(fixtures: Iterable[Fixture]) -> int:
    return max(f.week for f in fixtures) + 1


def validate_schedule(fixtures: Sequence[Fixture], team_ids: Sequence[str]) -> None:
    known = set(team_ids)
    seen: set[tuple[str, str]] = set()
    per_week: dict[int, set[str]] = {}
    for f in fixtures:
        if f.home == f.away:
            raise ScheduleError(f"{f}: home == away")
        for t in (f.home, f.away):
            if t not in known:
                raise ScheduleError(f"{f}: unknown team {t!r}")
        if (f.home, f.away) in seen:
            raise ScheduleError(f"{f}: duplicate fixture")
        seen.add((f.home, f.away))
        week = per_week.setdefault(f.week, set())
        if f.home in week or f.away in week:
            raise ScheduleError(f"{f}: team plays twice in week {f.week}")
        week.update((f.home, f.away))


# ---------------------------------------------------------------------------
# standings


def tie_keys(n: int, tie_break_seed: int) -> list[int]:
    key = rng.stream(tie_break_seed & rng.MASK64, rng.SALT_TIE)
    return [rng.derive(key, t) for t in range(n)]


def rank_order(points: Sequence[int], tie_break_seed: int) -> list[int]:
    """Team indices from first to last place."""
    keys = tie_keys(len(points), tie_break_seed)
    return sorted(range(len(points)), key=lambda i: (-points[i], keys[i], i))


def rank_table(points: Mapping[str, int] | Sequence[int], tie_break_seed: int):
    """Rank 1..n by descending points; equal points are ordered by a uniform
    random permutation drawn from ``tie_break_seed``.

    Returns a dict for mapping input, otherwise an int array aligned with input.
    """
    if isinstance(points, Mapping):
        ids = list(points)
        order = rank_order([points[t] for t in ids], tie_break_seed)
        return {ids[i]: r + 1 for r, i in enumerate(order)}
    pts = [int(p) for p in points]
    ranks = np.empty(len(pts), dtype=np.int64)
    for r, i in enumerate(rank_order(pts, tie_break_seed)):
        ranks[i] = r + 1
    return ranks


@dataclass(frozen=True)
class StandingsTable:
    team_ids: tuple[str, ...]
    points: np.ndarray
    played: np.ndarray
    wins: np.ndarray
    draws: np.ndarray
    ranks: np.ndarray = field(repr=False)

    def rank_of(self, team_id: str) -> int:
        return int(self.ranks[self.team_ids.index(team_id)])

    def points_of(self, team_id: str) -> int:
        return int(self.points[self.team_ids.index(team_id)])


def tally(team_ids: Sequence[str], results: Iterable[Result]):
    """Points, played, wins and draws per team (aligned with ``team_ids``)."""
    index = {t: i for i, t in enumerate(team_ids)}
    n = len(team_ids)
    points = np.zeros(n, dtype=np.int64)
    played = np.zeros(n, dtype=np.int64)
    wins = np.zeros(n, dtype=np.int64)
    draws = np.zeros(n, dtype=np.int64)
    for fx, outcome in results:
        h, a = index[fx.home], index[fx.away]
        played[h] += 1
        played[a] += 1
        points[h] += points_for(outcome, Side.HOME)
        points[a] += points_for(outcome, Side.AWAY)
        if outcome is Outcome.DRAW:
            draws[h] += 1
            draws[a] += 1
        elif outcome is Outcome.HOME_WIN:
            wins[h] += 1
        else:
            wins[a] += 1
    return points, played, wins, draws


def standings(team_ids: Sequence[str], results: Iterable[Result],
              tie_break_seed: int = 0) -> StandingsTable:
    points, played, wins, draws = tally(team_ids, results)
    ranks = rank_table(points, tie_break_seed)
    return StandingsTable(tuple(team_ids), points, played, wins, draws, ranks)


def check_results(fixtures: Sequence[Fixture], results: Iterable[Result]) -> None:
    scheduled = set(fixtures)
    seen = set()
    for r in results:
        if r.fixture not in scheduled:
            raise ConsistencyError(f"result for unscheduled fixture {r.fixture}")
        if r.fixture in seen:
            raise ConsistencyError(f"duplicate result for {r.fixture}")
        seen.add(r.fixture)


def team_ids_of(fixtures: Iterable[Fixture]) -> list[str]:
    ids: dict[str, None] = {}
    for f in fixtures:
        ids.setdefault(f.home)
        ids.setdefault(f.away)
    return sorted(ids)


# ---------------------------------------------------------------------------
# CSV


def write_fixtures_csv(path: str | Path, fixtures: Iterable[Fixture]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["week", "home_id", "away_id"])
        for f in fixtures:
            w.writerow([f.week, f.home, f.away])


def write_results_csv(path: str | Path, results: Iterable[Result]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["week", "home_id", "away_id", "outcome"])
        for fx, outcome in results:
            w.writerow([fx.week, fx.home, fx.away, outcome.value])
