"""Categorical distribution errors."""
from __future__ import annotations

import abc


class CategoricalError(ValueError, metaclass=abc.ABCMeta):
    """A categorical distribution error."""


class SupportError(CategoricalError):
    """Invalid atom support."""


class DistributionError(CategoricalError):
    """Invalid probability vector."""


class ShapeMismatchError(CategoricalError):
    """A distribution does not fit its support or its companions."""

    def __init__(self, expected: int, actual: int, message: str = "") -> None:
        super().__init__(message or f"Expected {expected} atoms, got {actual}")
        self.expected = expected
        self.actual = actual
