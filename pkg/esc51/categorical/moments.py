"""Moments of categorical distributions."""
from __future__ import annotations

from esc51.categorical.support import CategoricalDistribution, Support, check_fits


def expectation(dist: CategoricalDistribution, support: Support) -> float:
    """Mean return, the sum of z_i * p_i."""
    check_fits(dist, support)
    return float(dist.probs @ support.atoms)


def variance(dist: CategoricalDistribution, support: Support) -> float:
    """Variance of the return around its mean; never negative."""
    mean = expectation(dist, support)
    return float(dist.probs @ (support.atoms - mean) ** 2)
