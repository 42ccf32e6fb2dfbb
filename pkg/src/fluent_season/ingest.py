"""Loading fixture, result and tactic CSVs with line-numbered diagnostics."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

from .league_core import Fixture, Outcome, Result, team_ids_of
from .outcome_model import TacticPair


class ParseError(ValueError):
    pass


class ValidationError(ValueError):
    pass


@dataclass
class LeagueState:
    fixtures: list[Fixture]
    results: list[Result] = field(default_factory=list)
    tactics: dict[Fixture, tuple[TacticPair, TacticPair]] = field(default_factory=dict)

    @property
    def team_ids(self) -> list[str]:
        return team_ids_of(self.fixtures)

    @property
    def n_weeks(self) -> int:
        return max(f.week for f in self.fixtures) + 1


def _rows(path: str | Path, header: list[str]):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            first = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file (line 1)") from None
        if [c.strip() for c in first] != header:
            raise ParseError(f"{path}: line 1: expected header {','.join(header)}")
        for row in reader:
            lineno = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise ParseError(f"{path}: line {lineno}: expected {len(header)} fields, got {len(row)}")
            yield lineno, [c.strip() for c in row]


def _int(path, lineno, name, text) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"{path}: line {lineno}: {name} {text!r} is not an integer") from None


def read_fixtures_csv(path: str | Path) -> list[Fixture]:
    fixtures = []
    seen: dict[tuple[str, str], int] = {}
    week_teams: dict[tuple[int, str], int] = {}
    for lineno, (week, home, away) in _rows(path, ["week", "home_id", "away_id"]):
        w = _int(path, lineno, "week", week)
        if w < 0:
            raise ValidationError(f"{path}: line {lineno}: negative week {w}")
        if home == away:
            raise ValidationError(f"{path}: line {lineno}: team {home!r} plays itself")
        if (home, away) in seen:
            raise ValidationError(
                f"{path}: line {lineno}: duplicate fixture {home} v {away} (first on line {seen[home, away]})")
        seen[home, away] = lineno
        for t in (home, away):
            if (w, t) in week_teams:
                raise ValidationError(
                    f"{path}: line {lineno}: {t!r} already plays in week {w} (line {week_teams[w, t]})")
            week_teams[w, t] = lineno
        fixtures.append(Fixture(w, home, away))
    if not fixtures:
        raise ValidationError(f"{path}: no fixtures")
    return fixtures


def read_results_csv(path: str | Path, fixtures: list[Fixture]) -> list[Result]:
    scheduled = set(fixtures)
    teams = set(team_ids_of(fixtures))
    n_weeks = max(f.week for f in fixtures) + 1
    results = []
    seen: dict[Fixture, int] = {}
    for lineno, (week, home, away, outcome) in _rows(path, ["week", "home_id", "away_id", "outcome"]):
        w = _int(path, lineno, "week", week)
        try:
            o = Outcome(outcome)
        except ValueError:
            raise ParseError(f"{path}: line {lineno}: outcome {outcome!r} not one of H, D, A") from None
        for t in (home, away):
            if t not in teams:
                raise ValidationError(f"{path}: line {lineno}: unknown team {t!r}")
        if not 0 <= w < n_weeks:
            raise ValidationError(f"{path}: line {lineno}: week {w} outside 0..{n_weeks - 1}")
        fx = Fixture(w, home, away)
        if fx not in scheduled:
            raise ValidationError(f"{path}: line {lineno}: result for unscheduled fixture {home} v {away} in week {w}")
        if fx in seen:
            raise ValidationError(f"{path}: line {lineno}: duplicate result (first on line {seen[fx]})")
        seen[fx] = lineno
        results.append(Result(fx, o))
    return results


TACTIC_HEADER = ["week", "home_id", "away_id", "home_style", "home_formation", "away_style", "away_formation"]


def read_tactics_csv(path: str | Path, fixtures: list[Fixture], n_styles: int,
                     n_formations: int) -> dict[Fixture, tuple[TacticPair, TacticPair]]:
    scheduled = set(fixtures)
    out = {}
    for lineno, row in _rows(path, TACTIC_HEADER):
        w = _int(path, lineno, "week", row[0])
        fx = Fixture(w, row[1], row[2])
        if fx not in scheduled:
            raise ValidationError(f"{path}: line {lineno}: tactics for unscheduled fixture {fx.home} v {fx.away}")
        if fx in out:
            raise ValidationError(f"{path}: line {lineno}: duplicate tactics row")
        hs, hf, as_, af = (_int(path, lineno, n, v) for n, v in zip(TACTIC_HEADER[3:], row[3:]))
        for s, f in ((hs, hf), (as_, af)):
            if not (0 <= s < n_styles and 0 <= f < n_formations):
                raise ValidationError(
                    f"{path}: line {lineno}: tactic ({s},{f}) outside catalog {n_styles}x{n_formations}")
        out[fx] = (TacticPair(hs, hf), TacticPair(as_, af))
    return out


def ingest_data(fixtures_csv: str | Path, results_csv: str | Path | None = None,
                tactics_csv: str | Path | None = None, n_styles: int = 2,
                n_formations: int = 2) -> LeagueState:
    fixtures = read_fixtures_csv(fixtures_csv)
    results = read_results_csv(results_csv, fixtures) if results_csv else []
    tactics = read_tactics_csv(tactics_csv, fixtures, n_styles, n_formations) if tactics_csv else {}
    return LeagueState(fixtures, results, tactics)
