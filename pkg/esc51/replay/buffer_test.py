"""Tests for esc51.replay.buffer."""
from __future__ import annotations

import math

import numpy as np
import pytest

from esc51.replay.buffer import ReplayBuffer, Transition, TransitionBatch


def transition(i: int) -> Transition:
    return Transition(obs=np.array([float(i)]), action=i % 2, reward=float(i), next_obs=np.array([i + 1.0]), done=False)


def stored_rewards(buffer: ReplayBuffer) -> list[float]:
    return [t.reward for t in buffer.contents()]


def test_push_once() -> None:
    buffer = ReplayBuffer(3, 1, 2)
    buffer.push(transition(0))
    assert len(buffer) == 1


def test_ring_eviction() -> None:
    buffer = ReplayBuffer(2, 1, 2)
    for i in range(3):
        buffer.push(transition(i))
    assert stored_rewards(buffer) == [1.0, 2.0]


def test_size_caps_at_capacity() -> None:
    buffer = ReplayBuffer(4, 1, 2)
    for i in range(4):
        buffer.push(transition(i))
    assert len(buffer) == 4
    buffer.push(transition(4))
    assert len(buffer) == 4


@pytest.mark.parametrize("pushes", [5, 7, 12, 13])
def test_fifo_order(pushes: int) -> None:
    buffer = ReplayBuffer(5, 1, 2)
    for i in range(1, pushes + 1):
        buffer.push(transition(i))
    assert stored_rewards(buffer) == [float(i) for i in range(pushes - 4, pushes + 1)]


def test_sampling_never_returns_evicted() -> None:
    buffer = ReplayBuffer(10, 1, 2)
    for i in range(25):
        buffer.push(transition(i))
    batch = buffer.sample_uniform(1000, np.random.default_rng(0))
    assert set(batch.rewards.tolist()) <= {float(i) for i in range(15, 25)}


def test_with_replacement_from_single_element() -> None:
    buffer = ReplayBuffer(10, 1, 2)
    buffer.push(transition(7))
    batch = buffer.sample_uniform(3, np.random.default_rng(0))
    assert [t.reward for t in batch] == [7.0, 7.0, 7.0]


def test_batch_columns_stay_aligned() -> None:
    buffer = ReplayBuffer(50, 1, 2)
    for i in range(50):
        buffer.push(transition(i))
    for t in buffer.sample_uniform(64, np.random.default_rng(1)):
        assert t.obs[0] == t.reward
        assert t.next_obs[0] == t.reward + 1
        assert t.action == int(t.reward) % 2


def test_uniform_frequencies() -> None:
    buffer = ReplayBuffer(10_000, 1, 2)
    for i in range(10_000):
        buffer.push(transition(i))
    rng = np.random.default_rng(2)
    counts = np.zeros(10_000)
    for _ in range(1000):
        counts += np.bincount(buffer.sample_uniform(128, rng).rewards.astype(np.int64), minlength=10_000)
    expected = 1000 * 128 / 10_000
    # 12.8 expected draws per index is too few for a per-index bound, so check blocks of 100 indices
    blocks = counts.reshape(100, 100).sum(axis=1)
    assert np.all(np.abs(blocks - 100 * expected) <= 0.3 * 100 * expected)


def test_fixed_seed_is_deterministic() -> None:
    buffer = ReplayBuffer(100, 1, 2)
    for i in range(100):
        buffer.push(transition(i))
    first = buffer.sample_uniform(32, np.random.default_rng(3))
    second = buffer.sample_uniform(32, np.random.default_rng(3))
    np.testing.assert_array_equal(first.rewards, second.rewards)


def test_sampling_errors() -> None:
    buffer = ReplayBuffer(5, 1, 2)
    with pytest.raises(ValueError):
        buffer.sample_uniform(1, np.random.default_rng(0))
    buffer.push(transition(0))
    with pytest.raises(ValueError):
        buffer.sample_uniform(0, np.random.default_rng(0))


@pytest.mark.parametrize(
    "bad",
    [
        Transition(obs=np.zeros(1), action=-1, reward=0.0, next_obs=np.zeros(1), done=False),
        Transition(obs=np.zeros(1), action=2, reward=0.0, next_obs=np.zeros(1), done=False),
        Transition(obs=np.zeros(1), action=0, reward=math.nan, next_obs=np.zeros(1), done=False),
    ],
)
def test_invalid_transition(bad: Transition) -> None:
    with pytest.raises(ValueError):
        ReplayBuffer(5, 1, 2).push(bad)


def test_from_transitions() -> None:
    batch = TransitionBatch.from_transitions([transition(1), transition(2)])
    assert len(batch) == 2
    assert batch.obs.shape == (2, 1)
    assert batch.dones.dtype == np.bool_


def test_last_action_is_accepted() -> None:
    buffer = ReplayBuffer(5, 1, 3)
    buffer.push(Transition(obs=np.zeros(1), action=2, reward=0.0, next_obs=np.zeros(1), done=True))
    assert buffer.contents()[0].action == 2
    with pytest.raises(ValueError):
        ReplayBuffer(5, 1, 0)
