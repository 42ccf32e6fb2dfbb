"""Experiment configuration and the flat ``key = value`` config file format.

Values are Python literals (ints, floats, booleans, quoted strings, lists);
bare words are read as strings.  Lines starting with ``#`` are comments.
Every key must be a field of :class:`ExperimentConfig`.
"""
from __future__ import annotations

import ast
import hashlib
import json
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from .synthetic import GeneratorParams

# execution details that never change results
_NON_SEMANTIC = {"workers"}


@dataclass(frozen=True)
class ExperimentConfig:
    # league / generator
    n_teams: int = 20
    n_styles: int = 2
    n_formations: int = 2
    strength_sigma: float = 0.3
    strength_scale: float = 1.2
    home_advantage: float = 0.3
    draw_margin: float = 0.55
    style_effect: float = 0.25
    formation_effect: float = 0.25
    interaction_effect: float = 0.35
    # seeds
    base_seed: int = 0
    n_seeds: int = 20
    # simulation
    replicates: int = 2000
    final_replicates: int = 4000
    workers: int = 1
    # predictor training
    train_seasons: int = 2
    classifier_epochs: int = 60
    classifier_lr: float = 0.05
    # policies
    on_track_low: float = 0.4
    on_track_high: float = 0.75
    expectimax_mix: float = 0.5
    draw_credit: float = 0.0
    carry_over_weights: bool = True
    # experiment 3
    test_seasons: int = 3
    p_exponent: str = "fit"
    # experiment 4: "bottom8" picks one generator-ranked bottom-8 team per seed
    focal_team: str = "bottom8"

    def __post_init__(self):
        if self.n_teams < 2 or self.n_teams % 2:
            raise ValueError(f"n_teams must be even and >= 2, got {self.n_teams}")
        if self.n_seeds < 1 or self.replicates < 1 or self.final_replicates < 1:
            raise ValueError("n_seeds, replicates and final_replicates must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not 0 <= self.on_track_low <= self.on_track_high <= 1:
            raise ValueError("need 0 <= on_track_low <= on_track_high <= 1")
        if self.p_exponent != "fit":
            float(self.p_exponent)

    @property
    def n_weeks(self) -> int:
        return 2 * (self.n_teams - 1)

    @property
    def seeds(self) -> list[int]:
        return [self.base_seed + i for i in range(self.n_seeds)]

    def generator(self) -> GeneratorParams:
        names = {f.name for f in fields(GeneratorParams)}
        return GeneratorParams(**{k: v for k, v in asdict(self).items() if k in names})

    def to_dict(self) -> dict:
        return asdict(self)

    def semantic_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if k not in _NON_SEMANTIC}

    def config_hash(self) -> str:
        blob = json.dumps(self.semantic_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def with_(self, **changes) -> "ExperimentConfig":
        return replace(self, **changes)


def _value(text: str):
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError):
        if text in ("true", "false"):
            return text == "true"
        return text


def parse_config(text: str, base: ExperimentConfig | None = None) -> ExperimentConfig:
    known = {f.name: f for f in fields(ExperimentConfig)}
    changes = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key = key.strip()
        if not sep:
            raise ValueError(f"config line {lineno}: expected 'key = value'")
        if key not in known:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        v = _value(val.strip())
        ftype = known[key].type
        if ftype == "float" and isinstance(v, int) and not isinstance(v, bool):
            v = float(v)
        if ftype == "str":
            v = str(v)
        changes[key] = v
    return replace(base or ExperimentConfig(), **changes)


def load_config(path: str | Path, base: ExperimentConfig | None = None) -> ExperimentConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"), base)


def dump_config(cfg: ExperimentConfig, semantic: bool = False) -> str:
    """Config file text; ``semantic`` drops keys that cannot change results."""
    lines = []
    items = cfg.semantic_dict() if semantic else cfg.to_dict()
    for k, v in items.items():
        lines.append(f"{k} = {v!r}" if isinstance(v, str) else f"{k} = {v}")
    return "\n".join(lines) + "\n"
