"""A fixed-capacity ring buffer of transitions with uniform sampling."""
from __future__ import annotations

import dataclasses
import math
from collections.abc import Iterator

import numpy as np
import numpy.typing as npt


@dataclasses.dataclass(frozen=True)
class Transition:
    """One step of experience. `done` is true only for genuine terminal states."""

    obs: npt.NDArray[np.float64]
    action: int
    reward: float
    next_obs: npt.NDArray[np.float64]
    done: bool


@dataclasses.dataclass(frozen=True)
class TransitionBatch:
    """Column-wise view of sampled transitions."""

    obs: npt.NDArray[np.float64]
    actions: npt.NDArray[np.int64]
    rewards: npt.NDArray[np.float64]
    next_obs: npt.NDArray[np.float64]
    dones: npt.NDArray[np.bool_]

    def __len__(self) -> int:
        return int(self.actions.size)

    def __iter__(self) -> Iterator[Transition]:
        for i in range(len(self)):
            yield Transition(
                obs=self.obs[i],
                action=int(self.actions[i]),
                reward=float(self.rewards[i]),
                next_obs=self.next_obs[i],
                done=bool(self.dones[i]),
            )

    @classmethod
    def from_transitions(cls, transitions: list[Transition]) -> TransitionBatch:
        return cls(
            obs=np.stack([t.obs for t in transitions]).astype(np.float64),
            actions=np.array([t.action for t in transitions], dtype=np.int64),
            rewards=np.array([t.reward for t in transitions], dtype=np.float64),
            next_obs=np.stack([t.next_obs for t in transitions]).astype(np.float64),
            dones=np.array([t.done for t in transitions], dtype=np.bool_),
        )


class ReplayBuffer:
    """Stores the most recent `capacity` transitions; each insert past capacity evicts the oldest."""

    def __init__(self, capacity: int, observation_dim: int, action_count: int) -> None:
        if capacity < 1:
            raise ValueError(f"Capacity must be positive, got {capacity}")
        if action_count < 1:
            raise ValueError(f"Action count must be positive, got {action_count}")
        self.capacity = capacity
        self.action_count = action_count
        self.obs = np.zeros((capacity, observation_dim), dtype=np.float64)
        self.next_obs = np.zeros((capacity, observation_dim), dtype=np.float64)
        self.actions = np.zeros(capacity, dtype=np.int64)
        self.rewards = np.zeros(capacity, dtype=np.float64)
        self.dones = np.zeros(capacity, dtype=np.bool_)
        self.cursor = 0
        self.size = 0

    def __len__(self) -> int:
        return self.size

    def push(self, t: Transition) -> None:
        if not 0 <= t.action < self.action_count:
            raise ValueError(f"Invalid action {t.action} for {self.action_count} actions")
        if not math.isfinite(t.reward):
            raise ValueError(f"Reward must be finite, got {t.reward}")
        self.obs[self.cursor] = t.obs
        self.next_obs[self.cursor] = t.next_obs
        self.actions[self.cursor] = t.action
        self.rewards[self.cursor] = t.reward
        self.dones[self.cursor] = t.done
        self.cursor = (self.cursor + 1) % self.capacity
        self.size = min(self.size + 1, self.capacity)

    def ordered_indices(self) -> npt.NDArray[np.int64]:
        """Storage slots from oldest to newest."""
        start = self.cursor if self.size == self.capacity else 0
        return (start + np.arange(self.size)) % self.capacity

    def contents(self) -> list[Transition]:
        return list(self._gather(self.ordered_indices()))

    def sample_uniform(self, batch_size: int, rng: np.random.Generator) -> TransitionBatch:
        """Draw `batch_size` transitions uniformly with replacement.

        Sampling is allowed as soon as one transition is stored; a batch larger
        than the buffer simply repeats elements.
        """
        if batch_size < 1:
            raise ValueError(f"Batch size must be positive, got {batch_size}")
        if self.size == 0:
            raise ValueError("Cannot sample from an empty replay buffer")
        return self._gather(rng.integers(0, self.size, size=batch_size))

    def _gather(self, indices: npt.NDArray[np.int64]) -> TransitionBatch:
        return TransitionBatch(
            obs=self.obs[indices],
            actions=self.actions[indices],
            rewards=self.rewards[indices],
            next_obs=self.next_obs[indices],
            dones=self.dones[indices],
        )
