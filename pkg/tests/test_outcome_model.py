import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fluent_season.league_core import Outcome, Team
from fluent_season.outcome_model import (
    ClassifierParams, FitError, MatchContext, OutcomeDistribution, Predictor, TacticCatalog,
    TacticPair, TrainingError, cross_entropy, cross_entropy_grad,
    design_arrays, dumps_params, encode, fit_strengths, load_params, loads_params,
    n_params, ordered_logit, predict_outcome, save_params, train_arrays, train_classifier,
)
from fluent_season.synthetic import GeneratorParams, history, make_world, training_examples

CAT = TacticCatalog(2, 2)


def test_catalog_index_roundtrip():
    cat = TacticCatalog(3, 4)
    for i in range(cat.n_pairs):
        assert cat.index(cat.pair(i)) == i
    with pytest.raises(IndexError):
        cat.index(TacticPair(3, 0))


def test_outcome_distribution_validates():
    with pytest.raises(ValueError):
        OutcomeDistribution(0.5, 0.5, 0.5)
    d = OutcomeDistribution(0.5, 0.3, 0.2)
    assert d.swapped() == OutcomeDistribution(0.2, 0.3, 0.5)
    assert d.of(Outcome.DRAW) == 0.3


@given(st.floats(-5, 5), st.floats(0.01, 2))
def test_ordered_logit_is_distribution(eta, c):
    p = ordered_logit(eta, c)
    assert p.min() >= 0
    assert math.isclose(p.sum(), 1.0)
    q = ordered_logit(-eta, c)
    assert np.allclose(p, q[::-1])


def test_fit_strengths_recovers_order():
    world = make_world(GeneratorParams(n_teams=10, style_effect=0, formation_effect=0,
                                       interaction_effect=0, strength_sigma=0.5), 1)
    past = history(world, 6, 5)
    fit = fit_strengths([m.result for m in past])
    true = {t: tm.attack_strength + tm.defence_strength for t, tm in world.teams.items()}
    ids = sorted(true)
    rho = np.corrcoef([true[t] for t in ids], [fit.ratings[t] for t in ids])[0, 1]
    assert rho > 0.8
    assert abs(sum(fit.ratings.values())) < 1e-9
    assert 0.1 < fit.home_advantage < 0.6
    d = fit.predict(ids[0], ids[1])
    assert math.isclose(d.p_home + d.p_draw + d.p_away, 1.0)
    with pytest.raises(LookupError):
        fit.predict("nope", ids[0])
    assert all(t.home_advantage >= 0 for t in fit.to_teams().values())


def test_fit_strengths_errors():
    with pytest.raises(FitError):
        fit_strengths([])


def _random_instance(seed, n=6, cat=CAT):
    g = np.random.default_rng(seed)
    ns, nf = cat.n_styles, cat.n_formations
    phi = design_arrays(cat, g.integers(ns, size=n), g.integers(nf, size=n),
                        g.integers(ns, size=n), g.integers(nf, size=n),
                        g.normal(size=n), g.normal(size=n), g.uniform(0, 0.5, n))
    theta = g.normal(size=n_params(cat))
    y = g.integers(3, size=n)
    return theta, phi, y


def numeric_grad(theta, phi, y, h=1e-6):
    g = np.zeros_like(theta)
    for i in range(len(theta)):
        e = np.zeros_like(theta)
        e[i] = h
        g[i] = (cross_entropy(theta + e, phi, y) - cross_entropy(theta - e, phi, y)) / (2 * h)
    return g


@pytest.mark.parametrize("seed", range(5))
def test_gradient_matches_central_difference(seed):
    theta, phi, y = _random_instance(seed)
    a = cross_entropy_grad(theta, phi, y)
    n = numeric_grad(theta, phi, y)
    assert np.linalg.norm(a - n) / max(np.linalg.norm(n), 1e-12) < 1e-5


def test_zero_parameters_give_uniform_and_ln3():
    theta, phi, y = _random_instance(0)
    zero = ClassifierParams.zeros(CAT)
    assert np.allclose(zero.probs(phi), 1 / 3)
    assert math.isclose(cross_entropy(zero.theta, phi, y), math.log(3))


def test_mirror_symmetry():
    """Swapping sides with no home advantage mirrors home and away wins."""
    g = np.random.default_rng(1)
    params = ClassifierParams(CAT, g.normal(size=n_params(CAT)))
    a = Team("a", attack_strength=1.3, defence_strength=0.9, home_advantage=0.0)
    b = Team("b", attack_strength=0.8, defence_strength=1.1, home_advantage=0.0)
    ctx = MatchContext(a, b, TacticPair(0, 1), TacticPair(1, 0))
    p = predict_outcome(ctx, params)
    q = predict_outcome(ctx.swapped(), params)
    assert np.allclose(p.as_array(), q.swapped().as_array())


def test_training_decreases_loss_and_learns():
    world = make_world(GeneratorParams(n_teams=8), 3)
    data = training_examples(world, history(world, 4, 9))
    params = train_classifier(data, world.catalog, epochs=30, learning_rate=0.05, seed=1)
    assert params.loss_history[-1] < math.log(3) - 0.02
    assert params.loss_history[-1] <= params.loss_history[0] + 1e-9
    again = train_classifier(data, world.catalog, epochs=30, learning_rate=0.05, seed=1)
    assert np.array_equal(params.theta, again.theta)


def test_training_rejects_missing_class():
    theta, phi, y = _random_instance(0)
    with pytest.raises(TrainingError):
        train_arrays(phi, np.zeros_like(y), CAT)
    with pytest.raises(TrainingError):
        train_classifier([], CAT)


def test_encode_rejects_out_of_catalog():
    a, b = Team("a"), Team("b")
    with pytest.raises(IndexError):
        encode(MatchContext(a, b, TacticPair(2, 0), TacticPair(0, 0)), CAT)


def test_params_roundtrip(tmp_path):
    g = np.random.default_rng(5)
    p = ClassifierParams(TacticCatalog(3, 2), g.normal(size=n_params(TacticCatalog(3, 2))))
    q = loads_params(dumps_params(p))
    assert q.catalog == p.catalog
    assert np.array_equal(q.theta, p.theta)
    save_params(p, tmp_path / "m.txt")
    assert np.array_equal(load_params(tmp_path / "m.txt").theta, p.theta)
    with pytest.raises(ValueError):
        loads_params("format = other\n")


def test_predictor_table_and_marginal(world6):
    g = np.random.default_rng(2)
    params = ClassifierParams(world6.catalog, g.normal(scale=0.3, size=n_params(world6.catalog)))
    pred = Predictor(params, world6.teams)
    h, a = world6.team_ids[:2]
    t = pred.table(h, a)
    assert t.shape == (4, 4, 3)
    assert np.allclose(t.sum(axis=-1), 1)
    cat = world6.catalog
    direct = pred.predict(h, a, cat.pair(1), cat.pair(2)).as_array()
    assert np.allclose(t[1, 2], direct)
    assert np.allclose(pred.marginal(h, a), t.mean(axis=(0, 1)))
    point = np.eye(4)[3]
    assert np.allclose(pred.marginal(h, a, point, point), t[3, 3])
    with pytest.raises(LookupError):
        pred.table("zz", a)
