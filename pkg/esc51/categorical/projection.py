"""Shifting categorical distributions and projecting them back onto the support.

The batched functions work on raw arrays whose last axis holds the atom
probabilities; the scalar functions wrap them for single distributions.
"""
from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from esc51.categorical import errors
from esc51.categorical.support import SUM_TOLERANCE, CategoricalDistribution, Support, check_fits


def project_batch(
    probs: npt.NDArray[np.float64],
    support: Support,
    rewards: npt.ArrayLike,
    gamma: float,
    terminals: npt.ArrayLike,
) -> npt.NDArray[np.float64]:
    """Shift a batch of distributions by r + gamma * z and project onto the support.

    :param probs: (B, N) probabilities
    :param support: Atom support with N atoms
    :param rewards: (B,) rewards
    :param gamma: Discount factor in (0, 1]
    :param terminals: (B,) flags; a terminal row collapses onto its reward
    :return: (B, N) projected probabilities
    """
    probs = np.asarray(probs, dtype=np.float64)
    if probs.ndim != 2 or probs.shape[1] != support.n_atoms:
        raise errors.ShapeMismatchError(support.n_atoms, probs.shape[-1] if probs.ndim else 0)
    batch_size, n_atoms = probs.shape
    rewards = np.asarray(rewards, dtype=np.float64).reshape(batch_size)
    if not np.all(np.isfinite(rewards)):
        raise errors.DistributionError("Rewards must be finite")
    bootstrap = 1.0 - np.asarray(terminals, dtype=np.float64).reshape(batch_size)

    shifted = rewards[:, None] + gamma * bootstrap[:, None] * support.atoms[None, :]
    shifted = np.clip(shifted, support.v_min, support.v_max)
    b = (shifted - support.v_min) / support.delta_z
    # u = l + 1 always, so an integral b puts its whole mass on atom l (or on u at the top edge)
    lower = np.clip(np.floor(b), 0, n_atoms - 2).astype(np.int64)
    upper = lower + 1
    lower_weight = upper - b
    upper_weight = b - lower

    offsets = (np.arange(batch_size) * n_atoms)[:, None]
    indices = np.concatenate([(lower + offsets).ravel(), (upper + offsets).ravel()])
    masses = np.concatenate([(probs * lower_weight).ravel(), (probs * upper_weight).ravel()])
    projected = np.bincount(indices, weights=masses, minlength=batch_size * n_atoms)
    return projected.reshape(batch_size, n_atoms)


def shift_and_project(
    dist: CategoricalDistribution, support: Support, reward: float, gamma: float, terminal: bool
) -> CategoricalDistribution:
    """Apply one distributional Bellman backup to a single distribution.

    :param dist: Distribution of the next-state return
    :param support: Shared atom support
    :param reward: Immediate reward
    :param gamma: Discount factor in (0, 1]
    :param terminal: Disables bootstrapping, leaving a point mass at the reward
    :return: The projected target distribution
    """
    check_fits(dist, support)
    if not math.isfinite(reward):
        raise errors.DistributionError(f"Reward must be finite, got {reward}")
    projected = project_batch(dist.probs[None, :], support, [reward], gamma, [terminal])
    return CategoricalDistribution(projected[0])


def mix_batch(probs: npt.NDArray[np.float64], weights: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    """Mix (B, K, N) distributions with (B, K) weights into (B, N)."""
    return np.einsum("bk,bkn->bn", weights, probs)


def mix(dists: Sequence[CategoricalDistribution], weights: npt.ArrayLike) -> CategoricalDistribution:
    """Convex combination of distributions that share one support.

    :param dists: Nonempty list of distributions
    :param weights: Probability vector with one weight per distribution
    :return: The atomwise mixture
    """
    if len(dists) == 0:
        raise errors.DistributionError("Cannot mix an empty list of distributions")
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (len(dists),):
        raise errors.ShapeMismatchError(len(dists), weights.size, "Expected one weight per distribution")
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > SUM_TOLERANCE:
        raise errors.DistributionError("Mixture weights must be a probability vector")
    n_atoms = len(dists[0])
    for dist in dists:
        if len(dist) != n_atoms:
            raise errors.ShapeMismatchError(n_atoms, len(dist))
    stacked = np.stack([dist.probs for dist in dists])
    return CategoricalDistribution(mix_batch(stacked[None], weights[None])[0])


def project_then_mix(
    dists: Sequence[CategoricalDistribution],
    weights: npt.ArrayLike,
    support: Support,
    reward: float,
    gamma: float,
    terminal: bool,
) -> CategoricalDistribution:
    """Project every distribution first and mix the projections.

    Equal to projecting the mixture, since projection is linear in the masses
    for a fixed reward and discount.
    """
    projected = [shift_and_project(dist, support, reward, gamma, terminal) for dist in dists]
    return mix(projected, weights)
