"""The C51 learner shared by both backups."""
from __future__ import annotations

import numpy as np
import numpy.typing as npt

from esc51.agents import targets
from esc51.agents.config import AgentConfig, Algorithm
from esc51.envs import EnvSpec
from esc51.network import AdamOptimizer, TargetNetwork, ValueDistributionNetwork, q_values
from esc51.policy import sample_action, softmax_probs, tau_at
from esc51.replay import TransitionBatch


class C51Agent:
    """Online network, target network and optimizer for one run.

    Both algorithms act with the same softmax policy over the online network's
    Q-values; they differ only in how `build_targets` forms the bootstrap.
    """

    def __init__(self, config: AgentConfig, spec: EnvSpec, rng: np.random.Generator) -> None:
        self.config = config
        self.support = config.support
        self.schedule = config.schedule
        self.network = ValueDistributionNetwork(
            observation_dim=spec.observation_dim,
            action_count=spec.action_count,
            n_atoms=config.n_atoms,
            hidden_dims=config.hidden_dims,
            rng=rng,
        )
        self.target = TargetNetwork(self.network)
        beta1, beta2 = config.adam_betas
        self.optimizer = AdamOptimizer(
            self.network, learning_rate=config.learning_rate, beta1=beta1, beta2=beta2, eps=config.adam_eps
        )

    def q_values(self, obs: npt.ArrayLike) -> npt.NDArray[np.float64]:
        return q_values(self.network.forward(obs), self.support)

    def act(self, obs: npt.ArrayLike, t: int, rng: np.random.Generator) -> int:
        return act(self, obs, t, rng)

    def build_targets(self, batch: TransitionBatch, tau: float) -> npt.NDArray[np.float64]:
        if self.config.algorithm is Algorithm.ES_C51:
            return targets.build_target_es(batch, self.target, self.support, self.config.gamma, tau)
        return targets.build_target_ql(batch, self.target, self.support, self.config.gamma)

    def train_step(self, batch: TransitionBatch, tau: float) -> tuple[float, float]:
        """One gradient step on a sampled batch.

        :return: The loss before the step and the mean variance of the targets
        """
        target_probs = self.build_targets(batch, tau)
        loss, grads = self.network.loss_and_gradients(batch.obs, batch.actions, target_probs)
        if np.isfinite(loss):
            self.optimizer.step(grads)
        means = target_probs @ self.support.atoms
        variances = target_probs @ self.support.atoms**2 - means**2
        return loss, float(np.mean(np.maximum(variances, 0.0)))

    def sync_target(self) -> None:
        self.target.sync(self.network)


def act(agent: C51Agent, obs: npt.ArrayLike, t: int, rng: np.random.Generator) -> int:
    """Sample an action from the softmax policy at the temperature scheduled for timestep `t`."""
    probs = softmax_probs(agent.q_values(obs), tau_at(agent.schedule, t))
    return sample_action(probs, rng)
