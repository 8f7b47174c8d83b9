"""Bootstrap target distributions for the greedy and expected-Sarsa backups.

Both return one projected target distribution per transition as a (B, N)
array; next-state distributions always come from the target network.
"""
from __future__ import annotations

import numpy as np
import numpy.typing as npt

from esc51.categorical import Support, mix_batch, project_batch
from esc51.network import q_values
from esc51.network.mlp import DistributionPredictor
from esc51.policy import softmax_probs
from esc51.replay import TransitionBatch


def _next_state_distributions(
    batch: TransitionBatch, target_net: DistributionPredictor, support: Support
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    if len(batch) == 0:
        raise ValueError("Cannot build targets for an empty batch")
    pmfs = target_net.forward(batch.next_obs)
    return pmfs, q_values(pmfs, support)


def build_target_ql(
    batch: TransitionBatch, target_net: DistributionPredictor, support: Support, gamma: float
) -> npt.NDArray[np.float64]:
    """Project the distribution of the greedy next action (lowest index on ties)."""
    pmfs, q = _next_state_distributions(batch, target_net, support)
    greedy = np.argmax(q, axis=1)
    chosen = pmfs[np.arange(len(batch)), greedy]
    return project_batch(chosen, support, batch.rewards, gamma, batch.dones)


def build_target_es(
    batch: TransitionBatch, target_net: DistributionPredictor, support: Support, gamma: float, tau: float
) -> npt.NDArray[np.float64]:
    """Project the softmax-weighted mixture of all next-action distributions.

    :param tau: The temperature used for acting at the time of the update
    """
    pmfs, q = _next_state_distributions(batch, target_net, support)
    weights = softmax_probs(q, tau)
    mixture = mix_batch(pmfs, weights)
    return project_batch(mixture, support, batch.rewards, gamma, batch.dones)
