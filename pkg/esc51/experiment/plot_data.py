"""Smoothed learning curves averaged across seeds, as tab-separated plot data."""
from __future__ import annotations

import dataclasses
import os
from collections.abc import Mapping, Sequence

import numpy as np
import numpy.typing as npt

from esc51.agents import RunRecord

FORMAT_VERSION = 1
COLUMNS = ("algorithm", "timestep", "mean", "lower", "upper", "seeds")
MAX_POINTS = 1000


@dataclasses.dataclass(frozen=True)
class PlotRow:
    algorithm: str
    timestep: int
    mean: float
    lower: float
    upper: float
    seeds: int


def moving_average(values: Sequence[float], window: int) -> npt.NDArray[np.float64]:
    """Trailing mean over the last `window` values (fewer at the start)."""
    if window < 1:
        raise ValueError(f"Window must be positive, got {window}")
    values = np.asarray(values, dtype=np.float64)
    cumulative = np.concatenate([[0.0], np.cumsum(values)])
    ends = np.arange(1, values.size + 1)
    starts = np.maximum(ends - window, 0)
    return (cumulative[ends] - cumulative[starts]) / (ends - starts)


def common_grid(records: Mapping[str, Sequence[RunRecord]], max_points: int = MAX_POINTS) -> npt.NDArray[np.int64]:
    """Every episode-end timestep of every run, thinned evenly to at most `max_points`."""
    timesteps = sorted({e.timestep for runs in records.values() for run in runs for e in run.episodes})
    grid = np.array(timesteps, dtype=np.int64)
    if grid.size > max_points:
        grid = grid[np.linspace(0, grid.size - 1, max_points).round().astype(np.int64)]
    return grid


def _curve_on_grid(run: RunRecord, window: int, grid: npt.NDArray[np.int64]) -> npt.NDArray[np.float64]:
    # the value at a grid point is the smoothed return of the latest episode ended by then
    if not run.episodes:
        return np.full(grid.size, np.nan)
    ends = np.array([e.timestep for e in run.episodes])
    smoothed = moving_average(run.returns, window)
    latest = np.searchsorted(ends, grid, side="right") - 1
    return np.where(latest >= 0, smoothed[np.maximum(latest, 0)], np.nan)


def plot_rows(
    records: Mapping[str, Sequence[RunRecord]], window: int, grid: npt.NDArray[np.int64] | None = None
) -> list[PlotRow]:
    """Across-seed mean and +/- one standard deviation band of smoothed returns, per algorithm."""
    if not records or not any(records.values()):
        raise ValueError("Expected at least one run record")
    grid = common_grid(records) if grid is None else np.asarray(grid, dtype=np.int64)
    rows = []
    for algorithm, runs in records.items():
        if not runs:
            continue
        curves = np.stack([_curve_on_grid(run, window, grid) for run in runs])
        for column, timestep in enumerate(grid):
            values = curves[:, column]
            values = values[~np.isnan(values)]
            if values.size == 0:
                continue
            mean, std = float(values.mean()), float(values.std())
            rows.append(PlotRow(algorithm, int(timestep), mean, mean - std, mean + std, int(values.size)))
    return rows


def emit_plot_data(
    records: Mapping[str, Sequence[RunRecord]],
    window: int,
    path: str | os.PathLike[str],
    grid: npt.NDArray[np.int64] | None = None,
) -> list[PlotRow]:
    """Write `plot_rows` as a tab-separated file with a format comment and a header line."""
    rows = plot_rows(records, window, grid)
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"# format_version: {FORMAT_VERSION} window: {window}\n")
        f.write("\t".join(COLUMNS) + "\n")
        for row in rows:
            f.write(f"{row.algorithm}\t{row.timestep}\t{row.mean!r}\t{row.lower!r}\t{row.upper!r}\t{row.seeds}\n")
    return rows
