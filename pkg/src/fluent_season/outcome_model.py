"""Single-match outcome probabilities.

Two predictors live here:

* an ordered-logit strength model fitted from H/D/A results (``fit_strengths``);
* a multinomial softmax classifier over tactic one-hots and strength
  differences, trained by SGD on categorical cross-entropy
  (``train_classifier`` / ``predict_outcome``).

The classifier's class scores are tied so that exchanging the two sides
(teams and tactics, with zero home advantage) exchanges the home-win and
away-win scores and leaves the draw score alone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, NamedTuple, Sequence

import numpy as np
from scipy.special import expit, log_softmax, softmax

from .league_core import Fixture, Outcome, Result, Team

FORMAT_NAME = "fluent-season-classifier"
FORMAT_VERSION = 1


class FitError(ValueError):
    pass


class TrainingError(ValueError):
    pass


class TacticPair(NamedTuple):
    style: int
    formation: int


@dataclass(frozen=True)
class TacticCatalog:
    n_styles: int
    n_formations: int

    def __post_init__(self):
        if self.n_styles < 1 or self.n_formations < 1:
            raise ValueError("catalog sizes must be >= 1")

    @property
    def n_pairs(self) -> int:
        return self.n_styles * self.n_formations

    def index(self, pair: TacticPair) -> int:
        self.check(pair)
        return pair.style * self.n_formations + pair.formation

    def pair(self, index: int) -> TacticPair:
        if not 0 <= index < self.n_pairs:
            raise IndexError(f"pair index {index} outside [0, {self.n_pairs})")
        return TacticPair(*divmod(index, self.n_formations))

    def pairs(self) -> list[TacticPair]:
        return [self.pair(i) for i in range(self.n_pairs)]

    def check(self, pair: TacticPair) -> None:
        if not (0 <= pair.style < self.n_styles and 0 <= pair.formation < self.n_formations):
            raise IndexError(f"{pair} outside catalog {self.n_styles}x{self.n_formations}")


@dataclass(frozen=True)
class OutcomeDistribution:
    p_home: float
    p_draw: float
    p_away: float

    def __post_init__(self):
        ps = (self.p_home, self.p_draw, self.p_away)
        if any(p < -1e-12 or p > 1 + 1e-12 for p in ps) or abs(sum(ps) - 1.0) > 1e-9:
            raise ValueError(f"not a distribution: {ps}")

    @classmethod
    def from_array(cls, p) -> "OutcomeDistribution":
        return cls(float(p[0]), float(p[1]), float(p[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.p_home, self.p_draw, self.p_away])

    def swapped(self) -> "OutcomeDistribution":
        return OutcomeDistribution(self.p_away, self.p_draw, self.p_home)

    def of(self, outcome: Outcome) -> float:
        return (self.p_home, self.p_draw, self.p_away)[outcome.index]


UNIFORM = OutcomeDistribution(1 / 3, 1 / 3, 1 / 3)


@dataclass(frozen=True)
class MatchContext:
    home: Team
    away: Team
    home_tactic: TacticPair
    away_tactic: TacticPair

    def __post_init__(self):
        if self.home.id == self.away.id:
            raise ValueError("a team cannot play itself")

    def swapped(self) -> "MatchContext":
        return MatchContext(self.away, self.home, self.away_tactic, self.home_tactic)


class TrainingExample(NamedTuple):
    context: MatchContext
    label: Outcome


# ---------------------------------------------------------------------------
# ordered-logit strength model


def ordered_logit(eta, draw_margin):
    """(p_home, p_draw, p_away) for latent home superiority ``eta``."""
    eta = np.asarray(eta, dtype=float)
    ph = expit(eta - draw_margin)
    pa = expit(-eta - draw_margin)
    return np.stack([ph, 1.0 - ph - pa, pa], axis=-1)


@dataclass(frozen=True)
class FittedStrengths:
    """Ratings are centred log-odds units; ``home_advantage`` is shared."""
    ratings: Mapping[str, float]
    home_advantage: float
    draw_margin: float
    log_likelihood: float = float("nan")

    @property
    def attack(self) -> dict[str, float]:
        return {t: math.exp(r / 2) for t, r in self.ratings.items()}

    @property
    def defence(self) -> dict[str, float]:
        return {t: math.exp(r / 2) for t, r in self.ratings.items()}

    def to_teams(self) -> dict[str, Team]:
        att, dfc = self.attack, self.defence
        ha = max(self.home_advantage, 0.0)
        return {t: Team(t, t, att[t], dfc[t], ha) for t in self.ratings}

    def probs(self, home: str, away: str) -> np.ndarray:
        eta = self.home_advantage + self.ratings[home] - self.ratings[away]
        return ordered_logit(eta, self.draw_margin)

    def predict(self, home: str, away: str) -> OutcomeDistribution:
        try:
            return OutcomeDistribution.from_array(self.probs(home, away))
        except KeyError as exc:
            raise LookupError(f"unknown team {exc.args[0]!r}") from None

    def __call__(self, fixture: Fixture) -> OutcomeDistribution:
        return self.predict(fixture.home, fixture.away)


def fit_strengths(results: Sequence[Result], teams: Sequence[str] | None = None,
                  iterations: int = 2000, learning_rate: float = 0.5,
                  ridge: float = 1e-3) -> FittedStrengths:
    """Gradient ascent on the mean ordered-logit log-likelihood of H/D/A results.

    A small ridge penalty on the ratings keeps unbeaten teams finite.
    """
    if not results:
        raise FitError("no results to fit")
    seen = sorted({t for r in results for t in (r.fixture.home, r.fixture.away)})
    ids = list(teams) if teams is not None else seen
    missing = sorted(set(ids) - set(seen))
    if missing:
        raise FitError(f"teams with no games: {', '.join(missing)}")
    index = {t: i for i, t in enumerate(ids)}
    try:
        h_idx = np.array([index[r.fixture.home] for r in results])
        a_idx = np.array([index[r.fixture.away] for r in results])
    except KeyError as exc:
        raise FitError(f"result references unknown team {exc.args[0]!r}") from None
    y = np.array([r.outcome.index for r in results])
    n, m = len(ids), len(results)
    # per-team step scaling: each rating sees only its own games
    precond = m / (np.bincount(h_idx, minlength=n) + np.bincount(a_idx, minlength=n))

    ratings = np.zeros(n)
    home_adv = 0.0
    log_c = math.log(math.log(2.0))
    for _ in range(iterations):
        c = math.exp(log_c)
        eta = home_adv + ratings[h_idx] - ratings[a_idx]
        ph = expit(eta - c)
        pa = expit(-eta - c)
        pd = np.maximum(1.0 - ph - pa, 1e-300)
        gh, ga = ph * (1 - ph), pa * (1 - pa)
        d_eta = np.where(y == 0, 1 - ph, np.where(y == 2, -(1 - pa), -(gh - ga) / pd))
        d_c = np.where(y == 0, -(1 - ph), np.where(y == 2, -(1 - pa), (gh + ga) / pd))
        g_r = np.bincount(h_idx, d_eta, n) - np.bincount(a_idx, d_eta, n)
        g_r = g_r / m - ridge * ratings
        ratings += learning_rate * precond * g_r
        ratings -= ratings.mean()
        home_adv += learning_rate * d_eta.mean()
        log_c += learning_rate * d_c.mean() * c
    ratings -= ratings.mean()
    c = math.exp(log_c)
    p = ordered_logit(home_adv + ratings[h_idx] - ratings[a_idx], c)
    ll = float(np.log(np.maximum(p[np.arange(m), y], 1e-300)).sum())
    return FittedStrengths({t: float(ratings[i]) for t, i in index.items()},
                           float(home_adv), c, ll)


# ---------------------------------------------------------------------------
# softmax classifier


def side_width(catalog: TacticCatalog) -> int:
    return catalog.n_styles + catalog.n_formations + 1


def n_params(catalog: TacticCatalog) -> int:
    return 3 * side_width(catalog) + 4


def design_arrays(catalog: TacticCatalog, home_style, home_form, away_style, away_form,
                  home_diff, away_diff, home_adv) -> np.ndarray:
    """Class-score design tensor, shape ``(N, 3, n_params)``.

    ``home_diff`` is home attack minus away defence, ``away_diff`` the converse.
    """
    ns, nf = catalog.n_styles, catalog.n_formations
    arrays = [np.atleast_1d(np.asarray(a)) for a in
              (home_style, home_form, away_style, away_form, home_diff, away_diff, home_adv)]
    hs, hf, as_, af, hd, ad, ha = np.broadcast_arrays(*arrays)
    n = hs.shape[0]
    m = side_width(catalog)
    rows = np.arange(n)

    def side(style, form, diff):
        u = np.zeros((n, m))
        u[rows, style.astype(int)] = 1.0
        u[rows, ns + form.astype(int)] = 1.0
        u[:, ns + nf] = diff
        return u

    uh, ua = side(hs, hf, hd), side(as_, af, ad)
    phi = np.zeros((n, 3, 3 * m + 4))
    phi[:, 0, :m] = uh
    phi[:, 0, m:2 * m] = ua
    phi[:, 0, 3 * m] = ha
    phi[:, 2, :m] = ua
    phi[:, 2, m:2 * m] = uh
    phi[:, 2, 3 * m + 1] = ha
    phi[:, 1, 2 * m:3 * m] = uh + ua
    phi[:, 1, 3 * m + 2] = ha
    phi[:, 1, 3 * m + 3] = 1.0
    return phi


def encode(ctx: MatchContext, catalog: TacticCatalog) -> np.ndarray:
    catalog.check(ctx.home_tactic)
    catalog.check(ctx.away_tactic)
    h, a = ctx.home, ctx.away
    return design_arrays(
        catalog, ctx.home_tactic.style, ctx.home_tactic.formation,
        ctx.away_tactic.style, ctx.away_tactic.formation,
        h.attack_strength - a.defence_strength,
        a.attack_strength - h.defence_strength, h.home_advantage)[0]


def encode_examples(data: Sequence[TrainingExample], catalog: TacticCatalog):
    phi = np.stack([encode(ex.context, catalog) for ex in data])
    y = np.array([ex.label.index for ex in data])
    return phi, y


def cross_entropy(theta: np.ndarray, phi: np.ndarray, y: np.ndarray) -> float:
    logp = log_softmax(phi @ theta, axis=-1)
    return float(-logp[np.arange(len(y)), y].mean())


def cross_entropy_grad(theta: np.ndarray, phi: np.ndarray, y: np.ndarray) -> np.ndarray:
    p = softmax(phi @ theta, axis=-1)
    p[np.arange(len(y)), y] -= 1.0
    return np.einsum("nk,nkp->p", p, phi) / len(y)


@dataclass(frozen=True, eq=False)
class ClassifierParams:
    catalog: TacticCatalog
    theta: np.ndarray
    loss_history: tuple[float, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.theta.shape != (n_params(self.catalog),):
            raise ValueError(f"theta has shape {self.theta.shape}, want ({n_params(self.catalog)},)")

    @classmethod
    def zeros(cls, catalog: TacticCatalog) -> "ClassifierParams":
        return cls(catalog, np.zeros(n_params(catalog)))

    def probs(self, phi: np.ndarray) -> np.ndarray:
        return softmax(phi @ self.theta, axis=-1)


def train_classifier(data: Sequence[TrainingExample], catalog: TacticCatalog,
                     epochs: int = 200, learning_rate: float = 0.1, seed: int = 0,
                     batch_size: int = 32) -> ClassifierParams:
    """Minibatch SGD on mean categorical cross-entropy from a zero start."""
    if not data:
        raise TrainingError("no training examples")
    phi, y = encode_examples(data, catalog)
    return train_arrays(phi, y, catalog, epochs, learning_rate, seed, batch_size)


def train_arrays(phi: np.ndarray, y: np.ndarray, catalog: TacticCatalog,
                 epochs: int = 200, learning_rate: float = 0.1, seed: int = 0,
                 batch_size: int = 32) -> ClassifierParams:
    missing = sorted(set(range(3)) - set(np.unique(y).tolist()))
    if missing:
        names = ", ".join(Outcome.from_index(k).name for k in missing)
        raise TrainingError(f"class absent from training data: {names}")
    gen = np.random.default_rng(seed)
    theta = np.zeros(n_params(catalog))
    history = []
    n = len(y)
    for _ in range(epochs):
        perm = gen.permutation(n)
        for lo in range(0, n, batch_size):
            b = perm[lo:lo + batch_size]
            theta -= learning_rate * cross_entropy_grad(theta, phi[b], y[b])
        history.append(cross_entropy(theta, phi, y))
    return ClassifierParams(catalog, theta, tuple(history))


def predict_outcome(ctx: MatchContext, params: ClassifierParams) -> OutcomeDistribution:
    p = params.probs(encode(ctx, params.catalog))
    return OutcomeDistribution.from_array(p)


def accuracy(params: ClassifierParams, data: Sequence[TrainingExample]) -> float:
    phi, y = encode_examples(data, params.catalog)
    return float((params.probs(phi).argmax(axis=-1) == y).mean())


# ---------------------------------------------------------------------------
# predictor over a league


class Predictor:
    """Classifier bound to a team table; maps fixtures to outcome distributions.

    Called on a fixture it returns the marginal over tactics drawn uniformly
    (or from the given beliefs) for both sides.
    """

    def __init__(self, params: ClassifierParams, teams: Mapping[str, Team]):
        self.params = params
        self.catalog = params.catalog
        self.teams = dict(teams)
        self._tables: dict[tuple[str, str], np.ndarray] = {}

    def _team(self, team_id: str) -> Team:
        try:
            return self.teams[team_id]
        except KeyError:
            raise LookupError(f"unknown team {team_id!r}") from None

    def predict(self, home: str, away: str, home_tactic: TacticPair,
                away_tactic: TacticPair) -> OutcomeDistribution:
        ctx = MatchContext(self._team(home), self._team(away), home_tactic, away_tactic)
        return predict_outcome(ctx, self.params)

    def table(self, home: str, away: str) -> np.ndarray:
        """All tactic combinations: shape ``(n_pairs_home, n_pairs_away, 3)``."""
        key = (home, away)
        if key not in self._tables:
            h, a = self._team(home), self._team(away)
            cat = self.catalog
            k = cat.n_pairs
            xh, xa = np.divmod(np.arange(k), cat.n_formations)
            hs = np.repeat(xh, k)
            hf = np.repeat(xa, k)
            as_ = np.tile(xh, k)
            af = np.tile(xa, k)
            phi = design_arrays(cat, hs, hf, as_, af,
                                h.attack_strength - a.defence_strength,
                                a.attack_strength - h.defence_strength, h.home_advantage)
            self._tables[key] = self.params.probs(phi).reshape(k, k, 3)
        return self._tables[key]

    def marginal(self, home: str, away: str, home_belief=None, away_belief=None) -> np.ndarray:
        t = self.table(home, away)
        k = self.catalog.n_pairs
        bh = np.full(k, 1 / k) if home_belief is None else np.asarray(home_belief, float)
        ba = np.full(k, 1 / k) if away_belief is None else np.asarray(away_belief, float)
        return np.einsum("i,j,ijk->k", bh, ba, t)

    def __call__(self, fixture: Fixture) -> OutcomeDistribution:
        return OutcomeDistribution.from_array(self.marginal(fixture.home, fixture.away))


# ---------------------------------------------------------------------------
# serialisation


def dumps_params(params: ClassifierParams) -> str:
    cat = params.catalog
    lines = [
        f"format = {FORMAT_NAME}",
        f"version = {FORMAT_VERSION}",
        f"n_styles = {cat.n_styles}",
        f"n_formations = {cat.n_formations}",
        f"n_params = {len(params.theta)}",
    ]
    lines += [f"theta.{i} = {format(float(v), '.17g')}" for i, v in enumerate(params.theta)]
    return "\n".join(lines) + "\n"


def loads_params(text: str) -> ClassifierParams:
    kv: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'key = value'")
        kv[key.strip()] = value.strip()
    if kv.get("format") != FORMAT_NAME:
        raise ValueError(f"not a {FORMAT_NAME} file")
    if int(kv.get("version", -1)) != FORMAT_VERSION:
        raise ValueError(f"unsupported version {kv.get('version')}")
    cat = TacticCatalog(int(kv["n_styles"]), int(kv["n_formations"]))
    k = int(kv["n_params"])
    theta = np.array([float(kv[f"theta.{i}"]) for i in range(k)])
    return ClassifierParams(cat, theta)


def save_params(params: ClassifierParams, path: str | Path) -> None:
    Path(path).write_text(dumps_params(params), encoding="utf-8")


def load_params(path: str | Path) -> ClassifierParams:
    return loads_params(Path(path).read_text(encoding="utf-8"))
