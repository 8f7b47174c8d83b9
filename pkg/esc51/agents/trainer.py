"""The training loop shared by both algorithms."""
from __future__ import annotations

import time

import numpy as np

from esc51.agents import churn, errors
from esc51.agents.agent import C51Agent
from esc51.agents.config import AgentConfig
from esc51.agents.record import EpisodeLog, RunRecord, TrainingEvent
from esc51.envs import Environment
from esc51.logger import LOGGER
from esc51.network import errors as network_errors
from esc51.policy import tau_at
from esc51.replay import ReplayBuffer, Transition

# independent streams spawned from the run seed
INIT_STREAM, ENV_STREAM, ACTION_STREAM, REPLAY_STREAM, PROBE_STREAM = range(5)


class TrainingHooks:
    """Callbacks invoked by `train_loop`; every method is a no-op by default."""

    def on_episode(self, episode: EpisodeLog) -> None:
        return

    def on_training_event(self, event: TrainingEvent, agent: C51Agent) -> None:
        return

    def on_finish(self, record: RunRecord, agent: C51Agent) -> None:
        return


def spawn_streams(seed: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(5)]


def train_loop(config: AgentConfig, env: Environment, hooks: TrainingHooks | None = None) -> RunRecord:
    """Train a fresh agent on `env` for `config.total_timesteps` steps.

    Each step acts, stores the transition and, once past `learning_starts` and
    on every `train_frequency`-th step, takes one gradient step. The target
    network is synced every `target_update_interval` steps. The run is fully
    determined by the config seed.

    :param config: Agent configuration
    :param env: Environment to train on
    :param hooks: Optional callbacks
    :return: The run's logs
    """
    hooks = hooks or TrainingHooks()
    streams = spawn_streams(config.seed)
    agent = C51Agent(config, env.spec, streams[INIT_STREAM])
    buffer = ReplayBuffer(config.buffer_capacity, env.spec.observation_dim, env.spec.action_count)
    record = RunRecord(config=config, env_name=env.spec.name, seed=config.seed)
    probe: churn.ChurnProbe | None = None

    LOGGER.info(f"Training {config.algorithm.value} on {env.spec.name} with seed {config.seed}")
    started = time.perf_counter()
    obs = env.reset(streams[ENV_STREAM])
    episode_return, episode_length = 0.0, 0
    global_step = 0
    try:
        for global_step in range(config.total_timesteps):
            tau = tau_at(agent.schedule, global_step)
            action = agent.act(obs, global_step, streams[ACTION_STREAM])
            result = env.step(action)
            buffer.push(Transition(obs, action, result.reward, result.obs, result.terminated))
            episode_return += result.reward
            episode_length += 1

            if result.done:
                episode = EpisodeLog(
                    timestep=global_step + 1,
                    episode=len(record.episodes),
                    episode_return=episode_return,
                    length=episode_length,
                )
                record.episodes.append(episode)
                hooks.on_episode(episode)
                LOGGER.debug(f"step={episode.timestep} episode={episode.episode} return={episode_return}")
                obs = env.reset(streams[ENV_STREAM])
                episode_return, episode_length = 0.0, 0
            else:
                obs = result.obs

            if global_step > config.learning_starts and global_step % config.train_frequency == 0:
                if probe is None and config.churn_probe_size > 0:
                    probe = _make_probe(agent, buffer, config.churn_probe_size, streams[PROBE_STREAM])
                batch = buffer.sample_uniform(config.batch_size, streams[REPLAY_STREAM])
                loss, target_variance = agent.train_step(batch, tau)
                if not np.isfinite(loss):
                    raise errors.DivergedRunError(global_step)
                event = TrainingEvent(
                    timestep=global_step,
                    loss=loss,
                    tau=tau,
                    churn=churn.churn_rate(probe, agent.network, agent.support) if probe is not None else None,
                    target_variance=target_variance,
                )
                record.training_events.append(event)
                hooks.on_training_event(event, agent)

            if global_step % config.target_update_interval == 0:
                agent.sync_target()
    except network_errors.NonFiniteError as e:
        error = errors.DivergedRunError(global_step, f"Training diverged at timestep {global_step}: {e}")
        _attach(error, record, started)
        raise error from e
    except errors.DivergedRunError as e:
        _attach(e, record, started)
        raise

    record.duration_seconds = time.perf_counter() - started
    hooks.on_finish(record, agent)
    LOGGER.info(
        f"Finished {config.algorithm.value} on {env.spec.name} seed {config.seed}:"
        f" {len(record.episodes)} episodes in {record.duration_seconds:.1f}s"
    )
    return record


def _make_probe(
    agent: C51Agent, buffer: ReplayBuffer, size: int, rng: np.random.Generator
) -> churn.ChurnProbe:
    indices = buffer.ordered_indices()
    chosen = rng.choice(indices, size=min(size, len(indices)), replace=False)
    return churn.ChurnProbe.create(buffer.obs[np.sort(chosen)], agent.network, agent.support)


def _attach(error: errors.DivergedRunError, record: RunRecord, started: float) -> None:
    record.diverged_at = error.timestep
    record.duration_seconds = time.perf_counter() - started
    error.record = record
    LOGGER.error(str(error))
