"""Running single seeds and persisting their logs."""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import os
from typing import Any

import numpy as np

from esc51 import envs
from esc51.agents import AgentConfig, C51Agent, EpisodeLog, RunRecord, TrainingEvent, TrainingHooks, train_loop
from esc51.agents import errors as agent_errors
from esc51.experiment import errors, stats
from esc51.logger import LOGGER
from esc51.network import checkpoint

FORMAT_VERSION = 1
FORMAT_COMMENT = f"# format_version: {FORMAT_VERSION}"
EPISODE_COLUMNS = ("timestep", "episode", "return", "length")
EVENT_COLUMNS = ("timestep", "loss", "tau", "churn", "target_variance")
STICKY_STREAM = 7


@dataclasses.dataclass(frozen=True)
class RunKey:
    """Identifies one run on disk: (env, algorithm, seed, config hash)."""

    env_name: str
    algorithm: str
    seed: int
    config_hash: str

    def stem(self, out_dir: str | os.PathLike[str]) -> str:
        return os.path.join(out_dir, "runs", self.env_name, self.algorithm, f"seed-{self.seed}-{self.config_hash}")


def run_key(config: AgentConfig, env_name: str, sticky: float = 0.0) -> RunKey:
    return RunKey(env_name, config.algorithm.value, config.seed, config.config_hash(env_name, sticky))


class _CheckpointHook(TrainingHooks):
    def __init__(self, path: str) -> None:
        self.path = path

    def on_finish(self, record: RunRecord, agent: C51Agent) -> None:
        checkpoint.save_checkpoint(agent.network, agent.support, self.path)


def run_training(
    config: AgentConfig,
    seed: int,
    env_name: str,
    sticky: float = 0.0,
    out_dir: str | os.PathLike[str] | None = None,
    save_checkpoint: bool = False,
) -> RunRecord:
    """Train one seed and, when `out_dir` is given, write its CSV logs and JSON summary.

    A diverged run is not an error here: its partial record is returned and
    written with the failing timestep.

    :param config: Agent configuration; its seed is replaced by `seed`
    :param seed: Run seed
    :param env_name: Registered environment name
    :param sticky: Sticky-action probability
    :param out_dir: Output directory, or None to keep the record in memory
    :param save_checkpoint: Also write the final network next to the logs
    :return: The run record
    """
    config = dataclasses.replace(config, seed=seed)
    env = envs.make(env_name, sticky, np.random.default_rng([seed, STICKY_STREAM]))
    key = run_key(config, env_name, sticky)
    hooks = None
    if out_dir is not None:
        os.makedirs(os.path.dirname(key.stem(out_dir)), exist_ok=True)
        if save_checkpoint:
            hooks = _CheckpointHook(f"{key.stem(out_dir)}.npz")
    try:
        record = train_loop(config, env, hooks)
    except agent_errors.DivergedRunError as e:
        if e.record is None:
            raise
        record = e.record
    if out_dir is not None:
        write_run(record, key, out_dir, sticky)
    return record


def episodes_csv(record: RunRecord) -> str:
    buffer = io.StringIO()
    buffer.write(f"{FORMAT_COMMENT}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(EPISODE_COLUMNS)
    for e in record.episodes:
        writer.writerow([e.timestep, e.episode, repr(e.episode_return), e.length])
    return buffer.getvalue()


def events_csv(record: RunRecord) -> str:
    buffer = io.StringIO()
    buffer.write(f"{FORMAT_COMMENT}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(EVENT_COLUMNS)
    for e in record.training_events:
        writer.writerow(
            [
                e.timestep,
                repr(e.loss),
                repr(e.tau),
                "" if e.churn is None else repr(e.churn),
                "" if e.target_variance is None else repr(e.target_variance),
            ]
        )
    return buffer.getvalue()


def summary(record: RunRecord, key: RunKey, sticky: float = 0.0) -> dict[str, Any]:
    return {
        "format-version": FORMAT_VERSION,
        "env": record.env_name,
        "algorithm": record.config.algorithm.value,
        "seed": record.seed,
        "sticky": sticky,
        "config": record.config.to_dict(),
        "config-hash": key.config_hash,
        "episodes": len(record.episodes),
        "training-events": len(record.training_events),
        "final-decile-mean": stats.final_decile_mean(record) if record.episodes else None,
        "duration-seconds": record.duration_seconds,
        "diverged-at": record.diverged_at,
    }


def write_run(record: RunRecord, key: RunKey, out_dir: str | os.PathLike[str], sticky: float = 0.0) -> None:
    stem = key.stem(out_dir)
    os.makedirs(os.path.dirname(stem), exist_ok=True)
    LOGGER.debug(f"Writing run logs to {stem}.*")
    with open(f"{stem}.csv", "w", encoding="utf-8", newline="") as f:
        f.write(episodes_csv(record))
    with open(f"{stem}-events.csv", "w", encoding="utf-8", newline="") as f:
        f.write(events_csv(record))
    # the summary is written last; its presence marks a complete run
    with open(f"{stem}.json", "w", encoding="utf-8") as f:
        f.write(json.dumps(summary(record, key, sticky), indent=2))


def _read_rows(path: str) -> list[dict[str, str]]:
    with open(path, encoding="utf-8", newline="") as f:
        lines = f.read().splitlines()
    if not lines or lines[0] != FORMAT_COMMENT:
        raise errors.ExperimentFailure(errors.ExperimentFailure.Reason.FORMAT_VERSION, path=path)
    return list(csv.DictReader(lines[1:]))


def _optional(value: str) -> float | None:
    return None if value == "" else float(value)


def load_run(stem: str) -> RunRecord:
    """Rebuild a run record from the files written by `write_run`."""
    if not os.path.isfile(f"{stem}.json"):
        raise errors.ExperimentFailure(errors.ExperimentFailure.Reason.MISSING_RUNS, path=f"{stem}.json")
    with open(f"{stem}.json", encoding="utf-8") as f:
        dct = json.load(f)
    if dct.get("format-version") != FORMAT_VERSION:
        raise errors.ExperimentFailure(errors.ExperimentFailure.Reason.FORMAT_VERSION, path=f"{stem}.json")
    episodes = [
        EpisodeLog(int(row["timestep"]), int(row["episode"]), float(row["return"]), int(row["length"]))
        for row in _read_rows(f"{stem}.csv")
    ]
    events = [
        TrainingEvent(
            timestep=int(row["timestep"]),
            loss=float(row["loss"]),
            tau=float(row["tau"]),
            churn=_optional(row["churn"]),
            target_variance=_optional(row["target_variance"]),
        )
        for row in _read_rows(f"{stem}-events.csv")
    ]
    return RunRecord(
        config=AgentConfig.from_dict(dct["config"]),
        env_name=dct["env"],
        seed=dct["seed"],
        episodes=episodes,
        training_events=events,
        duration_seconds=dct["duration-seconds"],
        diverged_at=dct["diverged-at"],
    )


def load_or_run(
    config: AgentConfig, seed: int, env_name: str, sticky: float, out_dir: str | os.PathLike[str]
) -> RunRecord:
    """Load a cached run keyed by (env, algorithm, seed, config hash), training it first if absent."""
    key = run_key(dataclasses.replace(config, seed=seed), env_name, sticky)
    if os.path.isfile(f"{key.stem(out_dir)}.json"):
        LOGGER.debug(f"Reusing cached run {key}")
        return load_run(key.stem(out_dir))
    return run_training(config, seed, env_name, sticky, out_dir)
