"""Seed sweeps comparing two algorithms on one environment."""
from __future__ import annotations

import concurrent.futures
import dataclasses
import glob
import json
import os
from collections.abc import Sequence
from typing import Any

import numpy as np

from esc51.agents import AgentConfig, Algorithm, RunRecord
from esc51.experiment import errors, plot_data, runs, stats
from esc51.logger import LOGGER

FORMAT_VERSION = 1
SIGNIFICANCE_LEVEL = 0.05


@dataclasses.dataclass
class ComparisonReport:
    """Final-decile statistics of a baseline and a candidate over paired seeds."""

    env_name: str
    config_hash: str
    baseline: str
    candidate: str
    seeds: list[int]
    baseline_means: list[float]
    candidate_means: list[float]
    baseline_mean: float
    baseline_std: float
    candidate_mean: float
    candidate_std: float
    improvement_pct: float
    p_value: float
    significant: bool
    diverged: dict[str, list[int]] = dataclasses.field(default_factory=dict)
    runtime_seconds: dict[str, float] = dataclasses.field(default_factory=dict)
    warnings: list[str] = dataclasses.field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "format-version": FORMAT_VERSION,
            "env": self.env_name,
            "config-hash": self.config_hash,
            "baseline": self.baseline,
            "candidate": self.candidate,
            "seeds": self.seeds,
            "baseline-final-decile-means": self.baseline_means,
            "candidate-final-decile-means": self.candidate_means,
            "baseline-mean": self.baseline_mean,
            "baseline-std": self.baseline_std,
            "candidate-mean": self.candidate_mean,
            "candidate-std": self.candidate_std,
            "improvement-pct": self.improvement_pct,
            "p-value": self.p_value,
            "significant": self.significant,
            "diverged": self.diverged,
            "mean-runtime-seconds": self.runtime_seconds,
            "warnings": self.warnings,
        }

    def summary_line(self) -> str:
        return (
            f"{self.env_name}: {self.baseline} {self.baseline_mean:.2f} ± {self.baseline_std:.2f}"
            f" vs {self.candidate} {self.candidate_mean:.2f} ± {self.candidate_std:.2f},"
            f" improvement {self.improvement_pct:.2f}%, p={self.p_value:.4f}"
            f"{' (significant)' if self.significant else ''}"
        )


def build_report(
    env_name: str, config_hash: str, baseline_runs: Sequence[RunRecord], candidate_runs: Sequence[RunRecord]
) -> ComparisonReport:
    """Aggregate paired runs into a report; pure, so it can be rebuilt from cached files."""
    baseline_runs = sorted(baseline_runs, key=lambda run: run.seed)
    candidate_runs = sorted(candidate_runs, key=lambda run: run.seed)
    seeds = [run.seed for run in baseline_runs]
    if seeds != [run.seed for run in candidate_runs]:
        raise errors.ExperimentFailure(
            errors.ExperimentFailure.Reason.SEED_MISMATCH,
            baseline=seeds,
            candidate=[run.seed for run in candidate_runs],
        )
    if len(seeds) < 2:
        raise errors.ExperimentFailure(errors.ExperimentFailure.Reason.TOO_FEW_SEEDS, seeds=seeds)

    baseline_means = [stats.final_decile_mean(run) for run in baseline_runs]
    candidate_means = [stats.final_decile_mean(run) for run in candidate_runs]
    p_value = stats.wilcoxon_signed_rank(candidate_means, baseline_means)
    baseline, candidate = baseline_runs[0].config.algorithm.value, candidate_runs[0].config.algorithm.value

    warnings = []
    # the smallest two-sided exact p-value with n pairs is 2 / 2^n
    if 2.0 / 2 ** len(seeds) >= SIGNIFICANCE_LEVEL:
        warnings.append(f"low power: {len(seeds)} seeds cannot reach p < {SIGNIFICANCE_LEVEL}")
    diverged = {
        name: [run.seed for run in group if run.diverged]
        for name, group in ((baseline, baseline_runs), (candidate, candidate_runs))
    }
    if any(diverged.values()):
        warnings.append(f"diverged seeds: {diverged}")

    return ComparisonReport(
        env_name=env_name,
        config_hash=config_hash,
        baseline=baseline,
        candidate=candidate,
        seeds=seeds,
        baseline_means=baseline_means,
        candidate_means=candidate_means,
        baseline_mean=float(np.mean(baseline_means)),
        baseline_std=float(np.std(baseline_means, ddof=1)),
        candidate_mean=float(np.mean(candidate_means)),
        candidate_std=float(np.std(candidate_means, ddof=1)),
        improvement_pct=stats.improvement_pct(float(np.mean(baseline_means)), float(np.mean(candidate_means))),
        p_value=p_value,
        significant=p_value < SIGNIFICANCE_LEVEL,
        diverged=diverged,
        runtime_seconds={
            baseline: float(np.mean([run.duration_seconds for run in baseline_runs])),
            candidate: float(np.mean([run.duration_seconds for run in candidate_runs])),
        },
        warnings=warnings,
    )


def write_report(
    report: ComparisonReport,
    records: dict[str, Sequence[RunRecord]],
    out_dir: str | os.PathLike[str],
    window: int,
) -> tuple[str, str]:
    """Write the JSON report and the plot-data file; returns both paths."""
    os.makedirs(out_dir, exist_ok=True)
    report_path = os.path.join(out_dir, f"report-{report.env_name}-{report.config_hash}.json")
    plot_path = os.path.join(out_dir, f"plot-{report.env_name}-{report.config_hash}.tsv")
    with open(report_path, "w", encoding="utf-8") as f:
        f.write(json.dumps(report.to_dict(), indent=2))
    plot_data.emit_plot_data(records, window, plot_path)
    return report_path, plot_path


def compare(
    env_name: str,
    config: AgentConfig,
    seeds: Sequence[int],
    out_dir: str | os.PathLike[str],
    sticky: float = 0.0,
    workers: int = 1,
    baseline: Algorithm = Algorithm.QL_C51,
    candidate: Algorithm = Algorithm.ES_C51,
    window: int = 10,
) -> ComparisonReport:
    """Run (or load cached) baseline and candidate runs for every seed and compare them.

    :param env_name: Registered environment name
    :param config: Shared configuration; its algorithm and seed are overridden per run
    :param seeds: At least two seeds
    :param out_dir: Directory for run files, the report and the plot data
    :param sticky: Sticky-action probability
    :param workers: Number of worker processes; 1 runs in-process
    :param baseline: Baseline algorithm
    :param candidate: Candidate algorithm
    :param window: Episode window of the plotted moving average
    :return: The comparison report
    """
    seeds = list(seeds)
    if len(seeds) < 2:
        raise errors.ExperimentFailure(errors.ExperimentFailure.Reason.TOO_FEW_SEEDS, seeds=seeds)
    algorithms = list(dict.fromkeys([baseline, candidate]))
    jobs = [(dataclasses.replace(config, algorithm=algorithm), seed) for algorithm in algorithms for seed in seeds]

    LOGGER.info(f"Comparing {baseline.value} and {candidate.value} on {env_name} over seeds {seeds}")
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(runs.load_or_run, c, seed, env_name, sticky, out_dir) for c, seed in jobs]
            results = [future.result() for future in futures]
    else:
        results = [runs.load_or_run(c, seed, env_name, sticky, out_dir) for c, seed in jobs]

    by_algorithm: dict[str, list[RunRecord]] = {algorithm.value: [] for algorithm in algorithms}
    for (job_config, _), record in zip(jobs, results):
        by_algorithm[job_config.algorithm.value].append(record)

    config_hash = config.config_hash(env_name, sticky)
    report = build_report(env_name, config_hash, by_algorithm[baseline.value], by_algorithm[candidate.value])
    for warning in report.warnings:
        LOGGER.warning(warning)
    write_report(report, by_algorithm, out_dir, window)
    LOGGER.info(report.summary_line())
    return report


def report_directory(
    in_dir: str | os.PathLike[str],
    baseline: Algorithm = Algorithm.QL_C51,
    candidate: Algorithm = Algorithm.ES_C51,
    window: int = 10,
) -> list[ComparisonReport]:
    """Rebuild every comparison whose runs exist under `in_dir` without training anything."""
    groups: dict[tuple[str, str], dict[str, list[RunRecord]]] = {}
    for summary_path in sorted(glob.glob(os.path.join(in_dir, "runs", "*", "*", "*.json"))):
        with open(summary_path, encoding="utf-8") as f:
            dct = json.load(f)
        stem = summary_path[: -len(".json")]
        group = groups.setdefault((dct["env"], dct["config-hash"]), {})
        group.setdefault(dct["algorithm"], []).append(runs.load_run(stem))

    reports = []
    for (env_name, config_hash), by_algorithm in sorted(groups.items()):
        if baseline.value not in by_algorithm or candidate.value not in by_algorithm:
            LOGGER.warning(f"Skipping {env_name} {config_hash}: runs of both algorithms are needed")
            continue
        report = build_report(env_name, config_hash, by_algorithm[baseline.value], by_algorithm[candidate.value])
        records = {name: by_algorithm[name] for name in dict.fromkeys([baseline.value, candidate.value])}
        write_report(report, records, in_dir, window)
        LOGGER.info(report.summary_line())
        reports.append(report)
    if not reports:
        raise errors.ExperimentFailure(errors.ExperimentFailure.Reason.MISSING_RUNS, directory=str(in_dir))
    return reports
