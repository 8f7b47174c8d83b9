"""Agent errors."""
from __future__ import annotations

import abc
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from esc51.agents.record import RunRecord


class AgentError(Exception, metaclass=abc.ABCMeta):
    """An agent error."""


class ConfigurationError(AgentError, ValueError):
    """Invalid agent configuration."""


class DivergedRunError(AgentError, ArithmeticError):
    """Training produced a non-finite loss, logits or gradient."""

    def __init__(self, timestep: int, message: str = "") -> None:
        super().__init__(message or f"Training diverged at timestep {timestep}")
        self.timestep = timestep
        self.record: RunRecord | None = None
