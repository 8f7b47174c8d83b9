"""Experiment failures."""
from __future__ import annotations

import enum
from typing import Any


class ExperimentFailure(Exception):
    """An experiment that could not produce its result."""

    class Reason(enum.Enum):
        """Experiment failure reason."""

        DIVERGED = "Training diverged"
        FORMAT_VERSION = "Unsupported file format version"
        MISSING_RUNS = "Run files missing"
        NO_EPISODES = "Run completed no episodes"
        SEED_MISMATCH = "Seeds differ between algorithms"
        TOO_FEW_SEEDS = "A comparison needs at least two seeds"

    def __init__(self, reason: Reason, **kwargs: Any) -> None:
        super().__init__(reason.value)
        self.reason = reason
        self.dict = kwargs

    def __str__(self) -> str:
        details = ", ".join(f"{key}={value}" for key, value in self.dict.items())
        return f"{self.reason.value} ({details})" if details else self.reason.value

    def to_dict(self) -> dict[str, Any]:
        return {
            "reason": self.reason.value,
            **self.dict,
        }
