"""Tests for esc51.agents.targets."""
from __future__ import annotations

import numpy as np
import pytest

from esc51 import test
from esc51.agents.targets import build_target_es, build_target_ql
from esc51.categorical import make_support
from esc51.policy import softmax_probs
from esc51.replay import TransitionBatch

SUPPORT = make_support(3, 0.0, 2.0)
TIED = [[0.0, 1.0, 0.0], [0.5, 0.0, 0.5]]


def one_transition(reward: float = 0.0, done: bool = False) -> TransitionBatch:
    return test.doubles.batch_of([reward], [done])


def test_ql_picks_greedy_action() -> None:
    net = test.doubles.FixedDistributionNetwork([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    np.testing.assert_allclose(build_target_ql(one_transition(), net, SUPPORT, 1.0), [[0.0, 0.0, 1.0]])


def test_ql_ties_go_to_lowest_index() -> None:
    net = test.doubles.FixedDistributionNetwork(TIED)
    np.testing.assert_allclose(build_target_ql(one_transition(), net, SUPPORT, 1.0), [[0.0, 1.0, 0.0]])


@pytest.mark.parametrize("algorithm", ["ql", "es"])
def test_terminal_collapses_to_reward(algorithm: str) -> None:
    net = test.doubles.FixedDistributionNetwork(TIED)
    batch = one_transition(done=True)
    if algorithm == "ql":
        target = build_target_ql(batch, net, SUPPORT, 0.99)
    else:
        target = build_target_es(batch, net, SUPPORT, 0.99, 1.0)
    np.testing.assert_allclose(target, [[1.0, 0.0, 0.0]])


def test_es_mixes_equal_mean_actions() -> None:
    net = test.doubles.FixedDistributionNetwork(TIED)
    target = build_target_es(one_transition(), net, SUPPORT, 1.0, 1.0)
    np.testing.assert_allclose(target, [[0.25, 0.5, 0.25]], atol=1e-12)


def random_pmfs(rng: np.random.Generator, actions: int, atoms: int) -> np.ndarray:
    return rng.dirichlet(np.ones(atoms), size=actions)


def test_es_at_tiny_temperature_matches_ql() -> None:
    rng = np.random.default_rng(0)
    support = make_support(11, -5.0, 5.0)
    for _ in range(50):
        net = test.doubles.FixedDistributionNetwork(random_pmfs(rng, 3, 11))
        batch = test.doubles.batch_of(list(rng.uniform(-2, 2, size=4)), [False, False, True, False])
        np.testing.assert_allclose(
            build_target_es(batch, net, support, 0.95, 1e-6),
            build_target_ql(batch, net, support, 0.95),
            atol=1e-6,
        )


def test_es_to_ql_limit_by_gap() -> None:
    rng = np.random.default_rng(1)
    support = make_support(11, -5.0, 5.0)
    for _ in range(50):
        pmfs = random_pmfs(rng, 4, 11)
        q = np.sort(pmfs @ support.atoms)
        gap = q[-1] - q[-2]
        net = test.doubles.FixedDistributionNetwork(pmfs)
        batch = test.doubles.batch_of([0.5, -0.5], [False, False])
        difference = build_target_es(batch, net, support, 0.9, gap / 40) - build_target_ql(batch, net, support, 0.9)
        assert np.max(np.abs(difference)) < 1e-6


def test_es_expectation_consistency() -> None:
    rng = np.random.default_rng(2)
    support = make_support(21, -10.0, 10.0)
    for _ in range(50):
        pmfs = random_pmfs(rng, 3, 21)
        tau = rng.uniform(0.05, 2.0)
        rewards = list(rng.uniform(-1, 1, size=5))
        net = test.doubles.FixedDistributionNetwork(pmfs)
        target = build_target_es(test.doubles.batch_of(rewards, [False] * 5), net, support, 0.9, tau)
        q = pmfs @ support.atoms
        expected = np.array(rewards) + 0.9 * softmax_probs(q, tau) @ q
        np.testing.assert_allclose(target @ support.atoms, expected, atol=1e-6)


def test_single_action_backups_agree() -> None:
    rng = np.random.default_rng(3)
    support = make_support(7, -3.0, 3.0)
    net = test.doubles.FixedDistributionNetwork(random_pmfs(rng, 1, 7))
    batch = test.doubles.batch_of([0.3, -1.0, 2.0], [False, True, False])
    for tau in [1e-3, 1.0, 100.0]:
        np.testing.assert_array_equal(
            build_target_es(batch, net, support, 0.99, tau), build_target_ql(batch, net, support, 0.99)
        )


def test_targets_are_distributions() -> None:
    rng = np.random.default_rng(4)
    support = make_support(51, -10.0, 10.0)
    net = test.doubles.FixedDistributionNetwork(random_pmfs(rng, 2, 51))
    batch = test.doubles.batch_of(list(rng.uniform(-30, 30, size=64)), list(rng.random(64) < 0.3))
    for target in [build_target_ql(batch, net, support, 0.99), build_target_es(batch, net, support, 0.99, 0.5)]:
        assert np.all(target >= 0)
        np.testing.assert_allclose(target.sum(axis=1), 1.0, atol=1e-9)


def test_empty_batch() -> None:
    empty = TransitionBatch(
        obs=np.zeros((0, 1)),
        actions=np.zeros(0, dtype=np.int64),
        rewards=np.zeros(0),
        next_obs=np.zeros((0, 1)),
        dones=np.zeros(0, dtype=np.bool_),
    )
    net = test.doubles.FixedDistributionNetwork(TIED)
    with pytest.raises(ValueError):
        build_target_ql(empty, net, SUPPORT, 0.99)
