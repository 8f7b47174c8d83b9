"""Tests for esc51.experiment.evaluate."""
from __future__ import annotations

import numpy as np
import pytest

from esc51 import envs
from esc51.categorical import make_support
from esc51.experiment.evaluate import evaluate_policy
from esc51.network import ValueDistributionNetwork

SUPPORT = make_support(5, -2.0, 2.0)


def uniform_net(observation_dim: int = 1, action_count: int = 2) -> ValueDistributionNetwork:
    return ValueDistributionNetwork(
        observation_dim, action_count, 5, hidden_dims=(4,), rng=np.random.default_rng(0), zero_output_layer=True
    )


def test_greedy_rollout_takes_lowest_tied_action() -> None:
    returns = evaluate_policy(uniform_net(), envs.make("equal-mean"), SUPPORT, episodes=20, tau=0.0, seed=1)
    assert returns == [1.0] * 20


def test_softmax_rollout() -> None:
    returns = evaluate_policy(uniform_net(), envs.make("equal-mean"), SUPPORT, episodes=200, tau=1.0, seed=2)
    assert set(returns) == {0.0, 1.0, 2.0}
    assert returns == evaluate_policy(uniform_net(), envs.make("equal-mean"), SUPPORT, episodes=200, tau=1.0, seed=2)


def test_cartpole_rollout() -> None:
    returns = evaluate_policy(uniform_net(4, 2), envs.make("cartpole"), SUPPORT, episodes=3, tau=0.0, seed=3)
    assert all(1.0 <= r <= 500.0 for r in returns)


def test_network_must_fit_environment() -> None:
    with pytest.raises(ValueError):
        evaluate_policy(uniform_net(4, 3), envs.make("cartpole"), SUPPORT, episodes=1, tau=0.0, seed=0)


def test_needs_an_episode() -> None:
    with pytest.raises(ValueError):
        evaluate_policy(uniform_net(), envs.make("equal-mean"), SUPPORT, episodes=0, tau=0.0, seed=0)
