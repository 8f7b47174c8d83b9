"""Value network errors."""
from __future__ import annotations

import abc


class NetworkError(ValueError, metaclass=abc.ABCMeta):
    """A value network error."""


class DimensionMismatchError(NetworkError):
    """An input does not match the network's layer widths."""


class StructureMismatchError(NetworkError):
    """Two networks, or a network and its gradients, differ in layer shapes."""


class NonFiniteError(NetworkError):
    """A forward pass, loss or gradient produced a non-finite number."""


class CheckpointFormatError(NetworkError):
    """A checkpoint file cannot be read by this version."""
