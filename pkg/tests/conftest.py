import numpy as np
import pytest

from fluent_season.league_core import generate_schedule
from fluent_season.synthetic import GeneratorParams, make_world


@pytest.fixture
def teams4():
    return ["A", "B", "C", "D"]


@pytest.fixture
def schedule4(teams4):
    return generate_schedule(teams4, seed=1)


@pytest.fixture(scope="session")
def world6():
    return make_world(GeneratorParams(n_teams=6), seed=2)


@pytest.fixture(scope="session")
def world20():
    return make_world(GeneratorParams(), seed=0)


def equal_probs(n):
    return np.full((n, 3), 1 / 3)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
