"""Tests for esc51.policy.softmax."""
from __future__ import annotations

import numpy as np
import pytest

from esc51.policy.softmax import greedy_action, sample_action, softmax_probs


@pytest.mark.parametrize(
    "q,tau,expected",
    [
        [[1.0, 1.0], 1.0, [0.5, 0.5]],
        [[0.0, np.log(3.0)], 1.0, [0.25, 0.75]],
        [[0.0, 1.0], 0.01, [np.exp(-100.0) / (1 + np.exp(-100.0)), 1 / (1 + np.exp(-100.0))]],
        [[5.0], 0.3, [1.0]],
    ],
)
def test_softmax_examples(q: list[float], tau: float, expected: list[float]) -> None:
    np.testing.assert_allclose(softmax_probs(q, tau), expected, rtol=1e-12, atol=1e-300)


def test_no_overflow_at_small_temperature() -> None:
    probs = softmax_probs([1000.0, -1000.0, 999.0], 1e-3)
    assert np.all(np.isfinite(probs))
    np.testing.assert_allclose(probs, [1.0, 0.0, 0.0], atol=1e-300)


def test_rows_are_distributions() -> None:
    rng = np.random.default_rng(0)
    q = rng.normal(scale=50.0, size=(100, 6))
    for tau in [0.01, 0.5, 10.0]:
        probs = softmax_probs(q, tau)
        assert probs.shape == q.shape
        assert np.all(probs >= 0)
        np.testing.assert_allclose(probs.sum(axis=-1), 1.0, atol=1e-12)


def test_large_temperature_is_uniform() -> None:
    np.testing.assert_allclose(softmax_probs([0.0, 1.0, 2.0], 1e9), [1 / 3] * 3, atol=1e-8)


def test_small_temperature_picks_greedy() -> None:
    probs = softmax_probs([0.3, 0.9, 0.1], 1e-4)
    assert int(np.argmax(probs)) == greedy_action([0.3, 0.9, 0.1]) == 1
    assert probs[1] == pytest.approx(1.0)


@pytest.mark.parametrize("q,tau", [[[1.0, 2.0], 0.0], [[1.0, 2.0], -1.0], [[], 1.0], [[np.nan, 1.0], 1.0]])
def test_invalid_softmax(q: list[float], tau: float) -> None:
    with pytest.raises(ValueError):
        softmax_probs(q, tau)


def test_greedy_ties_go_to_lowest_index() -> None:
    assert greedy_action([2.0, 5.0, 5.0, 1.0]) == 1
    assert greedy_action([0.0, 0.0]) == 0


def test_sampling_frequencies() -> None:
    rng = np.random.default_rng(3)
    probs = np.array([0.1, 0.6, 0.3])
    counts = np.bincount([sample_action(probs, rng) for _ in range(20_000)], minlength=3)
    np.testing.assert_allclose(counts / counts.sum(), probs, atol=0.015)


def test_sampling_never_picks_zero_probability() -> None:
    rng = np.random.default_rng(4)
    assert {sample_action([0.0, 1.0, 0.0], rng) for _ in range(200)} == {1}


def test_sampling_is_deterministic_per_seed() -> None:
    probs = [0.25, 0.25, 0.5]
    first = [sample_action(probs, np.random.default_rng(9)) for _ in range(5)]
    second = [sample_action(probs, np.random.default_rng(9)) for _ in range(5)]
    assert first == second


@pytest.mark.parametrize("probs", [[0.5, 0.6], [-0.5, 1.5], [], [[0.5, 0.5]]])
def test_invalid_sampling(probs: list) -> None:
    with pytest.raises(ValueError):
        sample_action(probs, np.random.default_rng(0))
