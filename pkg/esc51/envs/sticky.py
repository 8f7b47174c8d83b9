"""Sticky actions: a stochasticity wrapper around any environment."""
from __future__ import annotations

import numpy as np
import numpy.typing as npt

from esc51.envs import base


class StickyActions(base.Environment):
    """Repeats the previous action instead of the requested one with probability `repeat_prob`.

    The first step of every episode executes the requested action. The wrapper
    draws from its own stream, so the wrapped dynamics stay reproducible.
    """

    def __init__(self, env: base.Environment, repeat_prob: float, rng: np.random.Generator) -> None:
        if not 0.0 <= repeat_prob < 1.0:
            raise ValueError(f"repeat_prob must lie in [0, 1), got {repeat_prob}")
        self.env = env
        self.spec = env.spec
        self.repeat_prob = repeat_prob
        self.rng = rng
        self.previous_action: int | None = None
        self.steps = 0
        self.repeats = 0

    def reset(self, rng: np.random.Generator) -> npt.NDArray[np.float64]:
        self.previous_action = None
        return self.env.reset(rng)

    def step(self, action: int) -> base.StepResult:
        self.check_action(action)
        if self.previous_action is not None and self.repeat_prob > 0 and self.rng.random() < self.repeat_prob:
            action = self.previous_action
            self.repeats += 1
        self.steps += 1
        self.previous_action = action
        return self.env.step(action)


def sticky_wrapper(env: base.Environment, repeat_prob: float, rng: np.random.Generator) -> base.Environment:
    return StickyActions(env, repeat_prob, rng)
