"""Boltzmann action probabilities, sampling, and greedy selection."""
from __future__ import annotations

import numpy as np
import numpy.typing as npt

PROBABILITY_TOLERANCE = 1e-9


def softmax_probs(q_values: npt.ArrayLike, tau: float) -> npt.NDArray[np.float64]:
    """Softmax over the last axis of `q_values` at temperature `tau`.

    The maximum is subtracted before exponentiating so small temperatures do not overflow.

    :param q_values: Action values, one row per state when 2-D
    :param tau: Temperature, strictly positive
    :return: Action probabilities with the shape of `q_values`
    """
    if not tau > 0:
        raise ValueError(f"Temperature must be positive, got {tau}")
    q = np.asarray(q_values, dtype=np.float64)
    if q.size == 0 or q.shape[-1] == 0:
        raise ValueError("Expected at least one action value")
    if not np.all(np.isfinite(q)):
        raise ValueError("Action values must be finite")
    scaled = (q - q.max(axis=-1, keepdims=True)) / tau
    weights = np.exp(scaled)
    return weights / weights.sum(axis=-1, keepdims=True)


def sample_action(probs: npt.ArrayLike, rng: np.random.Generator) -> int:
    """Draw an action index by inverting the cumulative distribution with one uniform draw."""
    p = np.asarray(probs, dtype=np.float64)
    if p.ndim != 1 or p.size == 0 or np.any(p < 0) or not np.all(np.isfinite(p)):
        raise ValueError("Expected a nonempty vector of nonnegative probabilities")
    if abs(p.sum() - 1.0) > PROBABILITY_TOLERANCE:
        raise ValueError(f"Probabilities must sum to 1, got {p.sum()}")
    cumulative = np.cumsum(p)
    index = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
    return min(index, p.size - 1)


def greedy_action(q_values: npt.ArrayLike) -> int:
    """Index of the largest action value; ties go to the lowest index."""
    q = np.asarray(q_values, dtype=np.float64)
    if q.size == 0:
        raise ValueError("Expected at least one action value")
    return int(np.argmax(q))
