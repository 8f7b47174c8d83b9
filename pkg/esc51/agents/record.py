"""Training logs of a single run."""
from __future__ import annotations

import dataclasses

from esc51.agents.config import AgentConfig


@dataclasses.dataclass(frozen=True)
class EpisodeLog:
    timestep: int
    episode: int
    episode_return: float
    length: int


@dataclasses.dataclass(frozen=True)
class TrainingEvent:
    timestep: int
    loss: float
    tau: float
    churn: float | None = None
    target_variance: float | None = None


@dataclasses.dataclass
class RunRecord:
    """Everything one training run logs.

    `duration_seconds` is excluded from equality so two runs of the same
    configuration and seed compare equal.
    """

    config: AgentConfig
    env_name: str
    seed: int
    episodes: list[EpisodeLog] = dataclasses.field(default_factory=list)
    training_events: list[TrainingEvent] = dataclasses.field(default_factory=list)
    duration_seconds: float = dataclasses.field(default=0.0, compare=False)
    diverged_at: int | None = None

    @property
    def returns(self) -> list[float]:
        return [e.episode_return for e in self.episodes]

    @property
    def diverged(self) -> bool:
        return self.diverged_at is not None
