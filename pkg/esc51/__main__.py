import argparse
import json
import logging
import os
import sys
import traceback
from typing import Any

import numpy as np

from esc51 import envs
from esc51.agents import AgentConfig
from esc51.agents.config import parse_algorithm
from esc51.experiment import compare, evaluate, runs, stats
from esc51.logger import LOGGER
from esc51.network import checkpoint

# CLI flag -> AgentConfig field
CONFIG_FLAGS = {
    "n_atoms": "n_atoms",
    "v_min": "v_min",
    "v_max": "v_max",
    "tau_start": "tau_start",
    "tau_floor": "tau_floor",
    "tau_fraction": "tau_fraction",
    "gamma": "gamma",
    "batch_size": "batch_size",
    "learning_starts": "learning_starts",
    "train_frequency": "train_frequency",
    "target_update": "target_update_interval",
    "total_timesteps": "total_timesteps",
    "learning_rate": "learning_rate",
}


def parse_arguments() -> argparse.Namespace:
    parser = build_parser()
    arguments = parser.parse_args()
    if arguments.verbose:
        LOGGER.setLevel(logging.DEBUG)
    return arguments


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="esc51")
    parser.add_argument("-v", "--verbose", action="store_true", default=False)
    subparsers = parser.add_subparsers(dest="command", required=True)

    train = subparsers.add_parser("train", help="train one seed")
    add_training_arguments(train)
    train.add_argument("--algo", required=True, choices=["ql-c51", "es-c51"])
    train.add_argument("--seed", type=int, default=1)
    train.add_argument("--save-checkpoint", action="store_true", default=False)
    train.add_argument("-f", "--force", action="store_true", default=False)

    compare_ = subparsers.add_parser("compare", help="run a seed sweep of both algorithms and compare them")
    add_training_arguments(compare_)
    compare_.add_argument("--seeds", required=True, help="comma-separated seeds, e.g. 1,2,3")
    compare_.add_argument("--workers", type=int, default=1)
    compare_.add_argument("--window", type=int, default=10)

    report = subparsers.add_parser("report", help="rebuild comparison reports from run files")
    report.add_argument("--in", dest="in_dir", required=True)
    report.add_argument("--window", type=int, default=10)

    evaluate_ = subparsers.add_parser("evaluate", help="roll out the policy of a saved network")
    evaluate_.add_argument("--checkpoint", required=True)
    evaluate_.add_argument("--env", required=True, choices=sorted(envs.REGISTRY))
    evaluate_.add_argument("--episodes", type=int, default=10)
    evaluate_.add_argument("--tau", type=float, default=0.0)
    evaluate_.add_argument("--seed", type=int, default=1)
    evaluate_.add_argument("--sticky", type=float, default=0.0)
    return parser


def add_training_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--env", required=True, choices=sorted(envs.REGISTRY))
    parser.add_argument("--out", required=True)
    parser.add_argument("-c", "--config", default=None, help="JSON file of AgentConfig overrides")
    parser.add_argument("--sticky", type=float, default=0.0)
    parser.add_argument("--total-timesteps", type=int)
    parser.add_argument("--n-atoms", type=int)
    parser.add_argument("--v-min", type=float)
    parser.add_argument("--v-max", type=float)
    parser.add_argument("--tau-start", type=float)
    parser.add_argument("--tau-floor", type=float)
    parser.add_argument("--tau-fraction", type=float)
    parser.add_argument("--gamma", type=float)
    parser.add_argument("--batch-size", type=int)
    parser.add_argument("--learning-starts", type=int)
    parser.add_argument("--train-frequency", type=int)
    parser.add_argument("--target-update", type=int)
    parser.add_argument("--learning-rate", type=float)


def check_preconditions(arguments: argparse.Namespace) -> None:
    if getattr(arguments, "config", None) is not None and not os.path.isfile(arguments.config):
        raise FileNotFoundError(f"Config file not found: {arguments.config}")
    if arguments.command == "report" and not os.path.isdir(arguments.in_dir):
        raise FileNotFoundError(f"Input directory not found: {arguments.in_dir}")
    if arguments.command == "evaluate" and not os.path.isfile(arguments.checkpoint):
        raise FileNotFoundError(f"Checkpoint not found: {arguments.checkpoint}")
    if arguments.command == "train" and not arguments.force:
        key = runs.run_key(build_config(arguments), arguments.env, arguments.sticky)
        if os.path.exists(f"{key.stem(arguments.out)}.json"):
            raise FileExistsError(f"Run already exists: {key.stem(arguments.out)}.json")


def build_config(arguments: argparse.Namespace) -> AgentConfig:
    overrides: dict[str, Any] = {}
    if arguments.config is not None:
        with open(arguments.config) as f:
            overrides.update(json.load(f))
    for flag, field in CONFIG_FLAGS.items():
        value = getattr(arguments, flag)
        if value is not None:
            overrides[field] = value
    if getattr(arguments, "algo", None) is not None:
        overrides["algorithm"] = parse_algorithm(arguments.algo).value
    if getattr(arguments, "seed", None) is not None:
        overrides["seed"] = arguments.seed
    return AgentConfig().with_overrides(overrides)


def parse_seeds(seeds: str) -> list[int]:
    return [int(seed) for seed in seeds.split(",") if seed.strip()]


def run(arguments: argparse.Namespace) -> None:
    if arguments.command == "train":
        config = build_config(arguments)
        record = runs.run_training(
            config, config.seed, arguments.env, arguments.sticky, arguments.out, arguments.save_checkpoint
        )
        if record.diverged:
            LOGGER.error(f"Run diverged at timestep {record.diverged_at}")
        if record.episodes:
            print(f"final-decile mean: {stats.final_decile_mean(record):.2f} over {len(record.episodes)} episodes")
    elif arguments.command == "compare":
        report = compare.compare(
            arguments.env,
            build_config(arguments),
            parse_seeds(arguments.seeds),
            arguments.out,
            sticky=arguments.sticky,
            workers=arguments.workers,
            window=arguments.window,
        )
        print(report.summary_line())
    elif arguments.command == "report":
        for report in compare.report_directory(arguments.in_dir, window=arguments.window):
            print(report.summary_line())
    elif arguments.command == "evaluate":
        net, support = checkpoint.load_checkpoint(arguments.checkpoint)
        env = envs.make(arguments.env, arguments.sticky, np.random.default_rng(arguments.seed))
        returns = evaluate.evaluate_policy(net, env, support, arguments.episodes, arguments.tau, arguments.seed)
        print(f"mean return: {np.mean(returns):.2f} over {len(returns)} episodes")


if __name__ == "__main__":
    try:
        arguments = parse_arguments()
        check_preconditions(arguments)
        run(arguments)
    except (FileExistsError, FileNotFoundError) as e:
        LOGGER.debug(traceback.format_exc())
        LOGGER.info(e)
        sys.exit(1)
    except BaseException as e:
        LOGGER.debug(traceback.format_exc())
        LOGGER.info(e)
        sys.exit(2)
