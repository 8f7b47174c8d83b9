"""A fully connected network that predicts one return distribution per action."""
from __future__ import annotations

import copy
import dataclasses
from collections.abc import Sequence
from typing import Protocol

import numpy as np
import numpy.typing as npt

from esc51.categorical import Support
from esc51.network import errors

LOG_CLAMP = 1e-12


class DistributionPredictor(Protocol):
    """Anything that maps observations to per-action atom probabilities."""

    def forward(self, obs: npt.ArrayLike) -> npt.NDArray[np.float64]:
        ...


@dataclasses.dataclass
class Gradients:
    """Loss gradients, shaped like the network's weights and biases."""

    weights: list[npt.NDArray[np.float64]]
    biases: list[npt.NDArray[np.float64]]

    def arrays(self) -> list[npt.NDArray[np.float64]]:
        return [array for pair in zip(self.weights, self.biases) for array in pair]


class ValueDistributionNetwork:
    """Maps an observation to |A| categorical distributions over N atoms.

    Hidden layers use rectified-linear activations; the output layer produces
    |A|*N logits that are reshaped to (|A|, N) and softmaxed per action.
    Weights are stored as (fan_in, fan_out) matrices.
    """

    def __init__(
        self,
        observation_dim: int,
        action_count: int,
        n_atoms: int,
        hidden_dims: Sequence[int] = (120, 84),
        rng: np.random.Generator | None = None,
        zero_output_layer: bool = False,
    ) -> None:
        self.action_count = action_count
        self.n_atoms = n_atoms
        self.layer_dims = [observation_dim, *hidden_dims, action_count * n_atoms]
        rng = rng if rng is not None else np.random.default_rng()
        self.weights: list[npt.NDArray[np.float64]] = []
        self.biases: list[npt.NDArray[np.float64]] = []
        for fan_in, fan_out in zip(self.layer_dims[:-1], self.layer_dims[1:]):
            bound = 1.0 / np.sqrt(fan_in)
            self.weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
            self.biases.append(rng.uniform(-bound, bound, size=fan_out))
        if zero_output_layer:
            self.weights[-1][:] = 0.0
            self.biases[-1][:] = 0.0

    @classmethod
    def from_parameters(
        cls,
        layer_dims: Sequence[int],
        action_count: int,
        weights: Sequence[npt.NDArray[np.float64]],
        biases: Sequence[npt.NDArray[np.float64]],
    ) -> ValueDistributionNetwork:
        if layer_dims[-1] % action_count != 0:
            raise errors.StructureMismatchError(f"Output width {layer_dims[-1]} is not a multiple of {action_count}")
        net = cls.__new__(cls)
        net.action_count = action_count
        net.n_atoms = layer_dims[-1] // action_count
        net.layer_dims = list(layer_dims)
        net.weights = [np.array(w, dtype=np.float64) for w in weights]
        net.biases = [np.array(b, dtype=np.float64) for b in biases]
        for (fan_in, fan_out), w, b in zip(zip(net.layer_dims[:-1], net.layer_dims[1:]), net.weights, net.biases):
            if w.shape != (fan_in, fan_out) or b.shape != (fan_out,):
                raise errors.StructureMismatchError(f"Parameters do not match layer dims {net.layer_dims}")
        return net

    def parameters(self) -> list[npt.NDArray[np.float64]]:
        """Parameter arrays in layer order: W0, b0, W1, b1, ..."""
        return [array for pair in zip(self.weights, self.biases) for array in pair]

    def parameter_count(self) -> int:
        return sum(p.size for p in self.parameters())

    def copy(self) -> ValueDistributionNetwork:
        return copy.deepcopy(self)

    def forward(self, obs: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """Per-action atom probabilities.

        :param obs: One observation (D,) or a batch (B, D)
        :return: (|A|, N) for a single observation, (B, |A|, N) for a batch
        """
        x = np.asarray(obs, dtype=np.float64)
        single = x.ndim == 1
        probs, _ = self._forward(x[None, :] if single else x)
        return probs[0] if single else probs

    def _forward(
        self, x: npt.NDArray[np.float64]
    ) -> tuple[npt.NDArray[np.float64], list[npt.NDArray[np.float64]]]:
        if x.ndim != 2 or x.shape[1] != self.layer_dims[0]:
            raise errors.DimensionMismatchError(f"Expected observations of width {self.layer_dims[0]}, got {x.shape}")
        if not np.all(np.isfinite(x)):
            raise errors.NonFiniteError("Observations must be finite")
        activations = [x]
        h = x
        last = len(self.weights) - 1
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            z = h @ w + b
            h = z if i == last else np.maximum(z, 0.0)
            activations.append(h)
        logits = h.reshape(x.shape[0], self.action_count, self.n_atoms)
        if not np.all(np.isfinite(logits)):
            raise errors.NonFiniteError("Network produced non-finite logits")
        shifted = np.exp(logits - logits.max(axis=-1, keepdims=True))
        return shifted / shifted.sum(axis=-1, keepdims=True), activations

    def loss_and_gradients(
        self, obs: npt.ArrayLike, actions: npt.ArrayLike, targets: npt.ArrayLike
    ) -> tuple[float, Gradients]:
        """Mean cross entropy between target distributions and the predictions for the taken actions.

        Only the taken action's logits receive signal: their gradient is
        (p - target) / B, every other action's is zero. The log is clamped at
        1e-12, which only matters for the reported loss.

        :param obs: (B, D) observations
        :param actions: (B,) taken actions
        :param targets: (B, N) target distributions
        :return: Loss and exact gradients
        """
        x = np.asarray(obs, dtype=np.float64)
        actions = np.asarray(actions, dtype=np.int64)
        targets = np.asarray(targets, dtype=np.float64)
        batch_size = x.shape[0] if x.ndim == 2 else 0
        if batch_size == 0:
            raise errors.DimensionMismatchError("Expected a nonempty batch of observations")
        if targets.shape != (batch_size, self.n_atoms) or actions.shape != (batch_size,):
            raise errors.DimensionMismatchError(
                f"Expected ({batch_size},) actions and ({batch_size}, {self.n_atoms}) targets"
            )
        if np.any(targets < 0) or np.max(np.abs(targets.sum(axis=1) - 1.0)) > 1e-9:
            raise errors.NetworkError("Targets must be probability vectors")

        probs, activations = self._forward(x)
        rows = np.arange(batch_size)
        chosen = probs[rows, actions]
        loss = float(np.mean(-np.sum(targets * np.log(np.maximum(chosen, LOG_CLAMP)), axis=1)))

        delta = np.zeros_like(probs)
        delta[rows, actions] = (chosen - targets) / batch_size
        delta = delta.reshape(batch_size, -1)

        weight_grads: list[npt.NDArray[np.float64]] = [np.empty(0)] * len(self.weights)
        bias_grads: list[npt.NDArray[np.float64]] = [np.empty(0)] * len(self.biases)
        for i in reversed(range(len(self.weights))):
            weight_grads[i] = activations[i].T @ delta
            bias_grads[i] = delta.sum(axis=0)
            if i > 0:
                delta = (delta @ self.weights[i].T) * (activations[i] > 0)
        return loss, Gradients(weights=weight_grads, biases=bias_grads)

    def same_structure(self, other: ValueDistributionNetwork) -> bool:
        return self.layer_dims == other.layer_dims and self.action_count == other.action_count


def q_values(pmfs: npt.ArrayLike, support: Support) -> npt.NDArray[np.float64]:
    """Expected return of each action's distribution; works on (..., |A|, N) arrays."""
    pmfs = np.asarray(pmfs, dtype=np.float64)
    if pmfs.shape[-1] != support.n_atoms:
        raise errors.DimensionMismatchError(f"Expected {support.n_atoms} atoms, got {pmfs.shape[-1]}")
    return pmfs @ support.atoms


class TargetNetwork:
    """A frozen copy of a network's parameters used for bootstrap targets."""

    def __init__(self, source: ValueDistributionNetwork) -> None:
        self.network = source.copy()

    def forward(self, obs: npt.ArrayLike) -> npt.NDArray[np.float64]:
        return self.network.forward(obs)

    def sync(self, source: ValueDistributionNetwork) -> TargetNetwork:
        return sync_target(source, self)


def sync_target(net: ValueDistributionNetwork, target: TargetNetwork) -> TargetNetwork:
    """Copy every parameter of `net` into `target`; later updates to `net` leave `target` untouched."""
    if not net.same_structure(target.network):
        raise errors.StructureMismatchError(
            f"Cannot sync {net.layer_dims} into a target with {target.network.layer_dims}"
        )
    for destination, source in zip(target.network.parameters(), net.parameters()):
        np.copyto(destination, source)
    return target
