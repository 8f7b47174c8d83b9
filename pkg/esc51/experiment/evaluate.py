"""Rolling out a saved network's policy."""
from __future__ import annotations

import numpy as np

from esc51.categorical import Support
from esc51.envs import Environment
from esc51.network import ValueDistributionNetwork, q_values
from esc51.policy import greedy_action, sample_action, softmax_probs


def evaluate_policy(
    net: ValueDistributionNetwork,
    env: Environment,
    support: Support,
    episodes: int,
    tau: float,
    seed: int,
) -> list[float]:
    """Episode returns of the softmax policy at temperature `tau`; `tau` = 0 acts greedily."""
    if episodes < 1:
        raise ValueError(f"Expected at least one episode, got {episodes}")
    if net.layer_dims[0] != env.spec.observation_dim or net.action_count != env.spec.action_count:
        raise ValueError(f"Network {net.layer_dims} does not fit environment {env.spec.name}")
    env_rng, action_rng = (np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(2))
    returns = []
    for _ in range(episodes):
        obs = env.reset(env_rng)
        total = 0.0
        while True:
            q = q_values(net.forward(obs), support)
            action = greedy_action(q) if tau == 0 else sample_action(softmax_probs(q, tau), action_rng)
            result = env.step(action)
            total += result.reward
            if result.done:
                break
            obs = result.obs
        returns.append(total)
    return returns
