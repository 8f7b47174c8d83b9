"""The linearly decaying softmax temperature."""
from __future__ import annotations

import dataclasses


@dataclasses.dataclass(frozen=True)
class TemperatureSchedule:
    """Linear decay from `tau_start` to `tau_floor` over `decay_fraction` of the run."""

    total_timesteps: int
    tau_start: float = 1.0
    tau_floor: float = 0.01
    decay_fraction: float = 0.75

    def __post_init__(self) -> None:
        if not self.tau_start >= self.tau_floor > 0:
            raise ValueError(f"Expected tau_start >= tau_floor > 0, got {self.tau_start} and {self.tau_floor}")
        if not 0 < self.decay_fraction <= 1:
            raise ValueError(f"decay_fraction must lie in (0, 1], got {self.decay_fraction}")
        if self.total_timesteps < 1:
            raise ValueError(f"total_timesteps must be positive, got {self.total_timesteps}")

    def tau_at(self, t: int) -> float:
        return tau_at(self, t)


def tau_at(schedule: TemperatureSchedule, t: int) -> float:
    """Temperature at global timestep `t`, clamped at the floor once the decay window ends."""
    if t < 0:
        raise ValueError(f"Timestep must be nonnegative, got {t}")
    decayed = schedule.tau_start * (1.0 - t / (schedule.decay_fraction * schedule.total_timesteps))
    return max(decayed, schedule.tau_floor)
