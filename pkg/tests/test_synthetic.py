import numpy as np

from fluent_season.league_core import Outcome
from fluent_season.synthetic import (
    GeneratorParams, draw_outcome, history, make_world, play_season, uniform_tactic,
)


def test_world_is_seeded(world6):
    again = make_world(GeneratorParams(n_teams=6), 2)
    assert again.teams == world6.teams
    assert np.array_equal(again.interaction, world6.interaction)
    assert np.allclose(world6.interaction, -world6.interaction.T)


def test_zero_effects_make_tactics_irrelevant():
    w = make_world(GeneratorParams(n_teams=4, style_effect=0, formation_effect=0,
                                   interaction_effect=0), 1)
    t = w.table(*w.team_ids[:2])
    assert np.allclose(t, t[0, 0])


def test_marginal_and_table(world6):
    h, a = world6.team_ids[:2]
    t = world6.table(h, a)
    assert np.allclose(t.sum(-1), 1)
    assert np.allclose(world6.marginal(h, a), t.mean(axis=(0, 1)))
    assert np.allclose(world6.marginal(h, a, 2, None), t[2].mean(axis=0))
    assert np.allclose(world6.marginal(h, a, 2, 3), t[2, 3])


def test_draws():
    p = np.array([0.2, 0.3, 0.5])
    assert draw_outcome(p, 0.1) is Outcome.HOME_WIN
    assert draw_outcome(p, 0.3) is Outcome.DRAW
    assert draw_outcome(p, 0.9) is Outcome.AWAY_WIN
    picks = [uniform_tactic(5, f, s, 4) for f in range(500) for s in (0, 1)]
    assert set(picks) == {0, 1, 2, 3}


def test_seasons(world6):
    s = play_season(world6, 3)
    assert len(s) == 30 and s == play_season(world6, 3)
    h = history(world6, 2, 3)
    assert len(h) == 60
    assert [m.fixture for m in h[:30]] != [m.fixture for m in h[30:]]


def test_strength_order(world20):
    order = world20.strength_order()
    total = [world20.teams[t].attack_strength + world20.teams[t].defence_strength for t in order]
    assert total == sorted(total, reverse=True)
