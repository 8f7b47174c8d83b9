"""Adaptive-moment (Adam) parameter updates."""
from __future__ import annotations

import dataclasses

import numpy as np
import numpy.typing as npt

from esc51.network import errors
from esc51.network.mlp import Gradients, ValueDistributionNetwork


@dataclasses.dataclass
class OptimizerState:
    """Step count and moment accumulators, one pair per parameter array."""

    learning_rate: float = 2.5e-4
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    step: int = 0
    first_moments: list[npt.NDArray[np.float64]] = dataclasses.field(default_factory=list)
    second_moments: list[npt.NDArray[np.float64]] = dataclasses.field(default_factory=list)

    @classmethod
    def for_network(cls, net: ValueDistributionNetwork, **hyperparameters: float) -> OptimizerState:
        params = net.parameters()
        return cls(
            first_moments=[np.zeros_like(p) for p in params],
            second_moments=[np.zeros_like(p) for p in params],
            **hyperparameters,  # type: ignore[arg-type]
        )


def apply_update(
    net: ValueDistributionNetwork, grads: Gradients, opt: OptimizerState
) -> tuple[ValueDistributionNetwork, OptimizerState]:
    """Take one bias-corrected Adam step in place.

    Nothing is modified when a gradient is non-finite or mis-shaped.

    :param net: Network whose parameters are updated
    :param grads: Gradients of the loss
    :param opt: Optimizer state, advanced by one step
    :return: The updated network and optimizer state
    """
    params = net.parameters()
    arrays = grads.arrays()
    if len(arrays) != len(params) or len(opt.first_moments) != len(params):
        raise errors.StructureMismatchError("Gradients and optimizer state must have one array per parameter")
    for param, grad, moment in zip(params, arrays, opt.first_moments):
        if grad.shape != param.shape or moment.shape != param.shape:
            raise errors.StructureMismatchError(f"Expected shape {param.shape}, got {grad.shape}")
        if not np.all(np.isfinite(grad)):
            raise errors.NonFiniteError("Refusing to apply non-finite gradients")

    opt.step += 1
    first_correction = 1.0 - opt.beta1**opt.step
    second_correction = 1.0 - opt.beta2**opt.step
    for param, grad, m, v in zip(params, arrays, opt.first_moments, opt.second_moments):
        m *= opt.beta1
        m += (1.0 - opt.beta1) * grad
        v *= opt.beta2
        v += (1.0 - opt.beta2) * grad * grad
        param -= opt.learning_rate * (m / first_correction) / (np.sqrt(v / second_correction) + opt.eps)
    return net, opt


class AdamOptimizer:
    """Binds a network to its optimizer state."""

    def __init__(self, net: ValueDistributionNetwork, **hyperparameters: float) -> None:
        self.net = net
        self.state = OptimizerState.for_network(net, **hyperparameters)

    def step(self, grads: Gradients) -> None:
        apply_update(self.net, grads, self.state)
