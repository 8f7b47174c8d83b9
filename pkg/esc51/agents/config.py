"""Agent configuration."""
from __future__ import annotations

import dataclasses
import enum
import hashlib
import json
from collections.abc import Mapping
from typing import Any

from esc51.agents import errors
from esc51.categorical import Support, make_support
from esc51.categorical import errors as categorical_errors
from esc51.logger import LOGGER
from esc51.policy import TemperatureSchedule


class Algorithm(enum.Enum):
    """How the bootstrap target distribution is built."""

    QL_C51 = "ql-c51"
    ES_C51 = "es-c51"


@dataclasses.dataclass(frozen=True)
class AgentConfig:
    """Hyperparameters of one training run; defaults are the classic-control C51 values."""

    algorithm: Algorithm = Algorithm.ES_C51
    gamma: float = 0.99
    batch_size: int = 128
    train_frequency: int = 10
    learning_starts: int = 10_000
    target_update_interval: int = 500
    total_timesteps: int = 500_000
    n_atoms: int = 101
    v_min: float = -100.0
    v_max: float = 100.0
    tau_start: float = 1.0
    tau_floor: float = 0.01
    tau_fraction: float = 0.75
    hidden_dims: tuple[int, ...] = (120, 84)
    learning_rate: float = 2.5e-4
    adam_betas: tuple[float, float] = (0.9, 0.999)
    adam_eps: float = 1e-8
    buffer_capacity: int = 10_000
    churn_probe_size: int = 256
    seed: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.algorithm, Algorithm):
            object.__setattr__(self, "algorithm", parse_algorithm(self.algorithm))
        object.__setattr__(self, "hidden_dims", tuple(int(d) for d in self.hidden_dims))
        object.__setattr__(self, "adam_betas", tuple(float(b) for b in self.adam_betas))
        if not 0 < self.gamma <= 1:
            raise errors.ConfigurationError(f"gamma must lie in (0, 1], got {self.gamma}")
        for name in ("batch_size", "train_frequency", "target_update_interval", "total_timesteps", "buffer_capacity"):
            if getattr(self, name) < 1:
                raise errors.ConfigurationError(f"{name} must be at least 1, got {getattr(self, name)}")
        if self.learning_starts < 0 or self.churn_probe_size < 0:
            raise errors.ConfigurationError("learning_starts and churn_probe_size must be nonnegative")
        if any(d < 1 for d in self.hidden_dims):
            raise errors.ConfigurationError(f"Hidden widths must be positive, got {self.hidden_dims}")
        if not self.learning_rate > 0:
            raise errors.ConfigurationError(f"learning_rate must be positive, got {self.learning_rate}")
        try:
            self.support
            self.schedule
        except (categorical_errors.CategoricalError, ValueError) as e:
            raise errors.ConfigurationError(str(e)) from e
        if self.learning_starts >= self.total_timesteps:
            LOGGER.warning(
                f"learning_starts={self.learning_starts} >= total_timesteps={self.total_timesteps}:"
                " no gradient steps will be taken"
            )

    @property
    def support(self) -> Support:
        return make_support(self.n_atoms, self.v_min, self.v_max)

    @property
    def schedule(self) -> TemperatureSchedule:
        return TemperatureSchedule(
            total_timesteps=self.total_timesteps,
            tau_start=self.tau_start,
            tau_floor=self.tau_floor,
            decay_fraction=self.tau_fraction,
        )

    def to_dict(self) -> dict[str, Any]:
        dct = dataclasses.asdict(self)
        dct["algorithm"] = self.algorithm.value
        dct["hidden_dims"] = list(self.hidden_dims)
        dct["adam_betas"] = list(self.adam_betas)
        return dct

    @classmethod
    def from_dict(cls, dct: Mapping[str, Any]) -> AgentConfig:
        known = {field.name for field in dataclasses.fields(cls)}
        unknown = set(dct) - known
        if unknown:
            raise errors.ConfigurationError(f"Unknown configuration keys: {sorted(unknown)}")
        return cls(**dct)

    def with_overrides(self, overrides: Mapping[str, Any]) -> AgentConfig:
        return AgentConfig.from_dict({**self.to_dict(), **overrides})

    def config_hash(self, *extra: object) -> str:
        """Short digest of everything but the seed and algorithm, plus any `extra` run identifiers.

        Runs of both algorithms under one hash are the pairs a comparison tests.
        """
        dct = self.to_dict()
        del dct["seed"], dct["algorithm"]
        payload = json.dumps([dct, *extra], sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:12]


def parse_algorithm(value: Any) -> Algorithm:
    try:
        return Algorithm(value)
    except ValueError:
        raise errors.ConfigurationError(
            f"Unknown algorithm {value!r}, expected one of {[a.value for a in Algorithm]}"
        ) from None
