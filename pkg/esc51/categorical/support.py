"""The fixed atom support and categorical distributions over it."""
from __future__ import annotations

import dataclasses
import math

import numpy as np
import numpy.typing as npt

from esc51.categorical import errors

SUM_TOLERANCE = 1e-9


@dataclasses.dataclass(frozen=True)
class Support:
    """A grid of evenly spaced return atoms on [v_min, v_max]."""

    n_atoms: int
    v_min: float
    v_max: float
    atoms: npt.NDArray[np.float64] = dataclasses.field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n_atoms < 2:
            raise errors.SupportError(f"A support needs at least 2 atoms, got {self.n_atoms}")
        if not (math.isfinite(self.v_min) and math.isfinite(self.v_max)):
            raise errors.SupportError(f"Support bounds must be finite, got [{self.v_min}, {self.v_max}]")
        if self.v_min >= self.v_max:
            raise errors.SupportError(f"Expected v_min < v_max, got [{self.v_min}, {self.v_max}]")
        atoms = np.linspace(self.v_min, self.v_max, self.n_atoms, dtype=np.float64)
        atoms.flags.writeable = False
        object.__setattr__(self, "atoms", atoms)

    @property
    def delta_z(self) -> float:
        return (self.v_max - self.v_min) / (self.n_atoms - 1)


def make_support(n_atoms: int, v_min: float, v_max: float) -> Support:
    """Build a support of `n_atoms` atoms uniformly spaced in [v_min, v_max].

    :param n_atoms: Number of atoms, at least 2
    :param v_min: Smallest representable return
    :param v_max: Largest representable return
    :return: The support
    """
    return Support(n_atoms=int(n_atoms), v_min=float(v_min), v_max=float(v_max))


@dataclasses.dataclass(frozen=True)
class CategoricalDistribution:
    """A probability mass vector over the atoms of a support.

    Construction validates the vector; use `normalized` to rescale arbitrary
    nonnegative masses first. Operations never renormalize silently.
    """

    probs: npt.NDArray[np.float64]

    def __post_init__(self) -> None:
        probs = np.array(self.probs, dtype=np.float64)
        if probs.ndim != 1 or probs.size < 2:
            raise errors.DistributionError(f"Expected a vector of at least 2 probabilities, got shape {probs.shape}")
        check_probabilities(probs)
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)

    @classmethod
    def normalized(cls, masses: npt.ArrayLike) -> CategoricalDistribution:
        masses = np.asarray(masses, dtype=np.float64)
        if np.any(masses < 0) or not np.all(np.isfinite(masses)):
            raise errors.DistributionError("Masses must be finite and nonnegative")
        total = masses.sum()
        if total <= 0:
            raise errors.DistributionError("Masses must not all be zero")
        return cls(masses / total)

    @classmethod
    def one_hot(cls, support: Support, index: int) -> CategoricalDistribution:
        probs = np.zeros(support.n_atoms)
        probs[index] = 1.0
        return cls(probs)

    @classmethod
    def uniform(cls, support: Support) -> CategoricalDistribution:
        return cls(np.full(support.n_atoms, 1.0 / support.n_atoms))

    def __len__(self) -> int:
        return int(self.probs.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CategoricalDistribution):
            return NotImplemented
        return bool(np.array_equal(self.probs, other.probs))

    def __hash__(self) -> int:
        return hash(self.probs.tobytes())


def check_probabilities(probs: npt.NDArray[np.float64]) -> None:
    """Check that the last axis of `probs` holds probability vectors.

    :param probs: Array whose last axis is a distribution over atoms
    """
    if not np.all(np.isfinite(probs)):
        raise errors.DistributionError("Probabilities must be finite")
    if np.any(probs < 0):
        raise errors.DistributionError("Probabilities must be nonnegative")
    deviation = np.max(np.abs(probs.sum(axis=-1) - 1.0))
    if deviation > SUM_TOLERANCE:
        raise errors.DistributionError(f"Probabilities must sum to 1, off by {deviation:.3g}")


def check_fits(dist: CategoricalDistribution, support: Support) -> None:
    if len(dist) != support.n_atoms:
        raise errors.ShapeMismatchError(support.n_atoms, len(dist))
