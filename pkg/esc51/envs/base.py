"""Environment interface shared by every task."""
from __future__ import annotations

import abc
import dataclasses

import numpy as np
import numpy.typing as npt


@dataclasses.dataclass(frozen=True)
class StepResult:
    """The outcome of one environment step.

    Only `terminated` suppresses bootstrapping; `truncated` marks a time limit.
    """

    obs: npt.NDArray[np.float64]
    reward: float
    terminated: bool
    truncated: bool

    @property
    def done(self) -> bool:
        return self.terminated or self.truncated


@dataclasses.dataclass(frozen=True)
class EnvSpec:
    """Static description of an environment."""

    name: str
    observation_dim: int
    action_count: int
    max_episode_steps: int

    def __post_init__(self) -> None:
        if self.action_count < 1:
            raise ValueError(f"An environment needs at least one action, got {self.action_count}")


class Environment(metaclass=abc.ABCMeta):
    """An episodic environment with a discrete action set.

    `reset` receives the random stream the environment draws from for the rest
    of the episode, so a seeded stream fixes the whole trajectory for a fixed
    action sequence.
    """

    spec: EnvSpec

    @abc.abstractmethod
    def reset(self, rng: np.random.Generator) -> npt.NDArray[np.float64]:
        """Start a new episode.

        :param rng: Random stream for the initial state and any stochastic dynamics
        :return: The first observation
        """

    @abc.abstractmethod
    def step(self, action: int) -> StepResult:
        """Advance one timestep.

        :param action: Action index in [0, action_count)
        :return: The step result
        """

    def check_action(self, action: int) -> None:
        if not 0 <= action < self.spec.action_count:
            raise ValueError(f"Invalid action {action} for {self.spec.name}")
