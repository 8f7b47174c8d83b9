"""Built-in environments and lookup by name."""
from __future__ import annotations

from collections.abc import Callable

import numpy as np

from esc51.envs import acrobot, base, cartpole, equal_mean, sticky

Environment = base.Environment
EnvSpec = base.EnvSpec
StepResult = base.StepResult
CartPole = cartpole.CartPole
Acrobot = acrobot.Acrobot
EqualMeanMDP = equal_mean.EqualMeanMDP
StickyActions = sticky.StickyActions

REGISTRY: dict[str, Callable[[], base.Environment]] = {
    "cartpole": CartPole,
    "acrobot": Acrobot,
    "equal-mean": EqualMeanMDP,
}


def make(name: str, sticky_prob: float = 0.0, rng: np.random.Generator | None = None) -> base.Environment:
    """Build an environment by name, optionally wrapped with sticky actions.

    :param name: One of the registered names
    :param sticky_prob: Probability of repeating the previous action; 0 disables the wrapper
    :param rng: Stream for the sticky-action draws, required when `sticky_prob` is positive
    :return: The environment
    """
    if name not in REGISTRY:
        raise ValueError(f"Unknown environment {name!r}, expected one of {sorted(REGISTRY)}")
    env = REGISTRY[name]()
    if sticky_prob > 0:
        if rng is None:
            raise ValueError("Sticky actions need a seeded rng")
        env = sticky.sticky_wrapper(env, sticky_prob, rng)
    return env
