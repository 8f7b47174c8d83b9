"""Tests for esc51.envs.acrobot."""
from __future__ import annotations

import math

import numpy as np
import pytest

from esc51.envs.acrobot import MAX_VEL_1, MAX_VEL_2, Acrobot, AcrobotState, acrobot_step


def test_reset_observation() -> None:
    obs = Acrobot().reset(np.random.default_rng(0))
    assert obs.shape == (6,)
    assert obs[0] == pytest.approx(1.0, abs=0.01)
    assert obs[2] == pytest.approx(1.0, abs=0.01)
    assert np.all(np.abs(obs[4:]) <= 0.1)


@pytest.mark.parametrize("action", [0, 1, 2])
def test_step_cost(action: int) -> None:
    _, result = acrobot_step(AcrobotState(0.0, 0.0, 0.0, 0.0), action)
    assert result.reward == -1.0
    assert not result.terminated


def test_upright_state_terminates() -> None:
    state = AcrobotState(math.pi, 0.0, 0.0, 0.0)
    assert state.solved
    _, result = acrobot_step(state, 1)
    assert result.terminated
    assert result.reward == 0.0


def test_velocities_clipped_and_angles_wrapped() -> None:
    rng = np.random.default_rng(1)
    env = Acrobot()
    env.reset(rng)
    for _ in range(200):
        result = env.step(int(rng.integers(0, 3)))
        assert env.state is not None
        assert -math.pi <= env.state.theta1 <= math.pi
        assert -math.pi <= env.state.theta2 <= math.pi
        assert abs(env.state.dtheta1) <= MAX_VEL_1
        assert abs(env.state.dtheta2) <= MAX_VEL_2
        if result.done:
            break


def test_random_policy_return() -> None:
    rng = np.random.default_rng(2)
    env = Acrobot()
    env.reset(rng)
    total, steps = 0.0, 0
    while True:
        result = env.step(int(rng.integers(0, 3)))
        total += result.reward
        steps += 1
        if result.done:
            break
    assert steps <= 500
    if result.truncated:
        assert total == -500.0
    else:
        assert total == -(steps - 1)
