"""Sampling budgets and tolerances shared by the positivity and analysis checkers."""

import json
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Dict, Optional, Union

import numpy as np

from .errors import ConfigError

# Tags mixed into RNG streams so every stage draws from its own sequence.
STAGE_POS2 = 2
STAGE_POS3 = 3
STAGE_ORTHANT = 4
STAGE_PD = 5
STAGE_CONVEXITY = 6
STAGE_SGCS = 7
STAGE_MARKOV = 8
STAGE_AMBIENT = 9


@dataclass(frozen=True)
class SamplerConfig:
    sample_count: int = 20000
    restart_count: int = 32
    tolerance: float = 1e-9
    compactify: bool = True
    seed: int = 0
    chart_only: bool = True
    radius_decades: float = 3.0
    bernstein_elevation: int = 16
    orbit_separation: float = 1e-4
    analysis_samples: int = 2000
    k_max: int = 20
    term_budget: int = 2_000_000
    max_workers: int = 1

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ConfigError(f"tolerance must be positive, got {self.tolerance}")
        for name in ("sample_count", "restart_count", "analysis_samples", "bernstein_elevation"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be nonnegative, got {getattr(self, name)}")
        if self.k_max < 1:
            raise ConfigError(f"k_max must be at least 1, got {self.k_max}")
        if self.max_workers < 1:
            raise ConfigError(f"max_workers must be at least 1, got {self.max_workers}")
        if self.radius_decades <= 0:
            raise ConfigError(f"radius_decades must be positive, got {self.radius_decades}")

    def rng(self, *stream: int) -> np.random.Generator:
        """Independent generator for one task, keyed by (seed, *stream)."""
        return np.random.default_rng([self.seed, *stream])

    def with_overrides(self, **overrides) -> "SamplerConfig":
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self) -> Dict:
        return asdict(self)


def load_config(path: Optional[Union[str, Path]] = None, **overrides) -> SamplerConfig:
    """Read a JSON object of SamplerConfig fields; keyword overrides win."""
    data = {}
    if path:
        try:
            with open(path) as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config {path} must hold a JSON object")
    try:
        base = SamplerConfig().with_overrides(**data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
    return base.with_overrides(**overrides)
