"""A one-state bandit whose two arms share a mean but not a variance."""
from __future__ import annotations

import numpy as np
import numpy.typing as npt

from esc51.envs import base

SPEC = base.EnvSpec(name="equal-mean", observation_dim=1, action_count=2, max_episode_steps=1)
START_OBSERVATION = np.ones(1, dtype=np.float64)
START_OBSERVATION.flags.writeable = False


def equal_mean_mdp_step(action: int, rng: np.random.Generator) -> base.StepResult:
    """Arm 0 pays 1 always; arm 1 pays 0 or 2 with equal probability. Every episode ends here."""
    if action == 0:
        reward = 1.0
    elif action == 1:
        reward = 2.0 if rng.random() < 0.5 else 0.0
    else:
        raise ValueError(f"Invalid action {action} for equal-mean")
    return base.StepResult(obs=START_OBSERVATION.copy(), reward=reward, terminated=True, truncated=False)


class EqualMeanMDP(base.Environment):
    """Single-step episodes from one start state; both arms have Q* = 1."""

    spec = SPEC

    def __init__(self) -> None:
        self.rng: np.random.Generator | None = None

    def reset(self, rng: np.random.Generator) -> npt.NDArray[np.float64]:
        self.rng = rng
        return START_OBSERVATION.copy()

    def step(self, action: int) -> base.StepResult:
        if self.rng is None:
            raise RuntimeError("Call reset before step")
        return equal_mean_mdp_step(action, self.rng)
