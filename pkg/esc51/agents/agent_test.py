"""Tests for esc51.agents.agent."""
from __future__ import annotations

import dataclasses

import numpy as np
import pytest

from esc51 import test
from esc51.agents.agent import C51Agent, act
from esc51.agents.config import AgentConfig, Algorithm
from esc51.agents.targets import build_target_es, build_target_ql
from esc51.envs import EnvSpec
from esc51.policy import softmax_probs, tau_at

SPEC = EnvSpec(name="test", observation_dim=2, action_count=2, max_episode_steps=10)
CONFIG = AgentConfig(
    n_atoms=3, v_min=-10.0, v_max=10.0, hidden_dims=(4,), total_timesteps=100, learning_starts=10, batch_size=4
)


def make_agent(config: AgentConfig = CONFIG, seed: int = 0) -> C51Agent:
    return C51Agent(config, SPEC, np.random.default_rng(seed))


def test_floor_temperature_acts_greedily() -> None:
    agent = make_agent()
    agent.network.weights[-1][:] = 0.0
    agent.network.biases[-1][:] = [0.0, 50.0, 0.0, -50.0, -50.0, 50.0]
    obs = np.array([0.2, -0.4])
    q = agent.q_values(obs)
    assert q[1] - q[0] == pytest.approx(10.0)
    assert softmax_probs(q, tau_at(agent.schedule, 100))[1] >= 1 - 1e-10
    rng = np.random.default_rng(1)
    assert {act(agent, obs, 100, rng) for _ in range(1000)} == {1}


def test_uniform_network_acts_uniformly() -> None:
    agent = make_agent()
    agent.network.weights[-1][:] = 0.0
    agent.network.biases[-1][:] = 0.0
    rng = np.random.default_rng(2)
    actions = [agent.act([1.0, 1.0], 0, rng) for _ in range(10_000)]
    assert np.mean(actions) == pytest.approx(0.5, abs=0.03)


def test_act_is_deterministic() -> None:
    first = [make_agent().act([0.5, 0.5], 3, np.random.default_rng(4)) for _ in range(3)]
    second = [make_agent().act([0.5, 0.5], 3, np.random.default_rng(4)) for _ in range(3)]
    assert first == second


@pytest.mark.parametrize("algorithm", [Algorithm.QL_C51, Algorithm.ES_C51])
def test_build_targets_dispatch(algorithm: Algorithm) -> None:
    config = CONFIG.with_overrides({"algorithm": algorithm})
    agent = make_agent(config)
    rng = np.random.default_rng(5)
    batch = test.doubles.batch_of([1.0, -2.0, 0.5], [False, True, False], obs_dim=2)
    batch = dataclasses.replace(batch, next_obs=rng.normal(size=(3, 2)))
    if algorithm is Algorithm.QL_C51:
        expected = build_target_ql(batch, agent.target, agent.support, config.gamma)
    else:
        expected = build_target_es(batch, agent.target, agent.support, config.gamma, 0.3)
    np.testing.assert_array_equal(agent.build_targets(batch, 0.3), expected)


def test_train_step_updates_online_network_only() -> None:
    agent = make_agent()
    online_before = [p.copy() for p in agent.network.parameters()]
    target_before = [p.copy() for p in agent.target.network.parameters()]
    batch = test.doubles.batch_of(
        [1.0, 0.0, -1.0, 2.0], [False, False, True, True], obs_dim=2, actions=[0, 1, 1, 0]
    )
    loss, target_variance = agent.train_step(batch, 0.5)
    assert np.isfinite(loss) and loss > 0
    assert target_variance >= 0
    assert any(not np.array_equal(a, b) for a, b in zip(agent.network.parameters(), online_before))
    for a, b in zip(agent.target.network.parameters(), target_before):
        np.testing.assert_array_equal(a, b)
    agent.sync_target()
    for a, b in zip(agent.target.network.parameters(), agent.network.parameters()):
        np.testing.assert_array_equal(a, b)
