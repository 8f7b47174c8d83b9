"""Final-decile aggregation and paired significance testing."""
from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt
import scipy.stats

from esc51.agents import RunRecord
from esc51.experiment import errors

EXACT_WILCOXON_LIMIT = 20


def final_decile_mean(run: RunRecord) -> float:
    """Mean return over the last ceil(E / 10) of a run's E episodes."""
    returns = run.returns
    if not returns:
        raise errors.ExperimentFailure(errors.ExperimentFailure.Reason.NO_EPISODES, seed=run.seed)
    count = -(-len(returns) // 10)
    return float(np.mean(returns[-count:]))


def wilcoxon_signed_rank(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Two-sided Wilcoxon signed-rank p-value for paired samples.

    Zero differences are dropped and tied magnitudes get mid-ranks. Up to 20
    nonzero pairs the null distribution is enumerated exactly; beyond that a
    tie-corrected normal approximation is used. With no nonzero difference the
    p-value is 1.

    :param xs: One value per seed
    :param ys: One value per seed, paired with `xs`
    :return: The p-value in (0, 1]
    """
    if len(xs) != len(ys):
        raise ValueError(f"Paired samples differ in length: {len(xs)} and {len(ys)}")
    if len(xs) == 0:
        raise ValueError("Expected at least one pair")
    diffs = np.asarray(xs, dtype=np.float64) - np.asarray(ys, dtype=np.float64)
    diffs = diffs[diffs != 0]
    n = diffs.size
    if n == 0:
        return 1.0
    ranks = scipy.stats.rankdata(np.abs(diffs))
    if n <= EXACT_WILCOXON_LIMIT:
        return _exact_p_value(ranks, diffs > 0)
    return _normal_p_value(ranks, diffs > 0)


def _exact_p_value(ranks: npt.NDArray[np.float64], positive: npt.NDArray[np.bool_]) -> float:
    # mid-ranks are multiples of 1/2, so doubled ranks are integers and the
    # null distribution of the doubled positive-rank sum is an integer polynomial
    doubled = np.rint(2 * ranks).astype(np.int64)
    counts = np.zeros(int(doubled.sum()) + 1, dtype=np.int64)
    counts[0] = 1
    for rank in doubled:
        shifted = np.zeros_like(counts)
        shifted[rank:] = counts[: counts.size - rank]
        counts = counts + shifted
    observed = int(doubled[positive].sum())
    at_most = int(counts[: observed + 1].sum())
    at_least = int(counts[observed:].sum())
    return min(1.0, 2.0 * min(at_most, at_least) / 2**ranks.size)


def _normal_p_value(ranks: npt.NDArray[np.float64], positive: npt.NDArray[np.bool_]) -> float:
    n = ranks.size
    statistic = ranks[positive].sum()
    mean = n * (n + 1) / 4.0
    _, tie_counts = np.unique(ranks, return_counts=True)
    variance = n * (n + 1) * (2 * n + 1) / 24.0 - np.sum(tie_counts**3 - tie_counts) / 48.0
    z = (statistic - mean) / math.sqrt(variance)
    return float(min(1.0, 2.0 * scipy.stats.norm.sf(abs(z))))


def improvement_pct(ql_mean: float, es_mean: float) -> float:
    """Relative improvement of the candidate over the baseline, in percent of |baseline|."""
    if ql_mean == 0:
        raise ValueError("Improvement is undefined for a zero baseline mean")
    return 100.0 * (es_mean - ql_mean) / abs(ql_mean)
