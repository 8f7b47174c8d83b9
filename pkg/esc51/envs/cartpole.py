"""Cart-pole balancing with the classic benchmark constants."""
from __future__ import annotations

import dataclasses
import math

import numpy as np
import numpy.typing as npt

from esc51.envs import base

GRAVITY = 9.8
CART_MASS = 1.0
POLE_MASS = 0.1
TOTAL_MASS = CART_MASS + POLE_MASS
HALF_LENGTH = 0.5
POLE_MASS_LENGTH = POLE_MASS * HALF_LENGTH
FORCE_MAGNITUDE = 10.0
TAU = 0.02
THETA_THRESHOLD = 12 * 2 * math.pi / 360
X_THRESHOLD = 2.4
MAX_EPISODE_STEPS = 500

SPEC = base.EnvSpec(name="cartpole", observation_dim=4, action_count=2, max_episode_steps=MAX_EPISODE_STEPS)


@dataclasses.dataclass(frozen=True)
class CartPoleState:
    x: float
    x_dot: float
    theta: float
    theta_dot: float

    def as_array(self) -> npt.NDArray[np.float64]:
        return np.array([self.x, self.x_dot, self.theta, self.theta_dot], dtype=np.float64)

    @property
    def failed(self) -> bool:
        # strict inequalities: a state exactly on a threshold is still alive
        return abs(self.x) > X_THRESHOLD or abs(self.theta) > THETA_THRESHOLD


def cartpole_reset(rng: np.random.Generator) -> CartPoleState:
    x, x_dot, theta, theta_dot = rng.uniform(-0.05, 0.05, size=4)
    return CartPoleState(float(x), float(x_dot), float(theta), float(theta_dot))


def cartpole_step(
    state: CartPoleState, action: int, integrator: str = "semi-implicit"
) -> tuple[CartPoleState, base.StepResult]:
    """One 0.02 s step of the cart-pole dynamics.

    :param state: Current state
    :param action: 0 pushes left, 1 pushes right
    :param integrator: "semi-implicit" (velocities first, then positions) or "euler"
    :return: Next state and the step result, never truncated here
    """
    if action not in (0, 1):
        raise ValueError(f"Invalid action {action} for cartpole")
    force = FORCE_MAGNITUDE if action == 1 else -FORCE_MAGNITUDE
    cos, sin = math.cos(state.theta), math.sin(state.theta)
    temp = (force + POLE_MASS_LENGTH * state.theta_dot**2 * sin) / TOTAL_MASS
    theta_acc = (GRAVITY * sin - cos * temp) / (HALF_LENGTH * (4.0 / 3.0 - POLE_MASS * cos**2 / TOTAL_MASS))
    x_acc = temp - POLE_MASS_LENGTH * theta_acc * cos / TOTAL_MASS

    if integrator == "semi-implicit":
        x_dot = state.x_dot + TAU * x_acc
        x = state.x + TAU * x_dot
        theta_dot = state.theta_dot + TAU * theta_acc
        theta = state.theta + TAU * theta_dot
    elif integrator == "euler":
        x = state.x + TAU * state.x_dot
        x_dot = state.x_dot + TAU * x_acc
        theta = state.theta + TAU * state.theta_dot
        theta_dot = state.theta_dot + TAU * theta_acc
    else:
        raise ValueError(f"Unknown integrator: {integrator}")

    next_state = CartPoleState(x, x_dot, theta, theta_dot)
    result = base.StepResult(
        obs=next_state.as_array(), reward=1.0, terminated=next_state.failed, truncated=False
    )
    return next_state, result


class CartPole(base.Environment):
    """Keep a pole upright on a moving cart; +1 per step, capped at 500 steps."""

    spec = SPEC

    def __init__(self, integrator: str = "semi-implicit") -> None:
        self.integrator = integrator
        self.state: CartPoleState | None = None
        self.elapsed = 0

    def reset(self, rng: np.random.Generator) -> npt.NDArray[np.float64]:
        self.state = cartpole_reset(rng)
        self.elapsed = 0
        return self.state.as_array()

    def step(self, action: int) -> base.StepResult:
        if self.state is None:
            raise RuntimeError("Call reset before step")
        self.state, result = cartpole_step(self.state, action, self.integrator)
        self.elapsed += 1
        if not result.terminated and self.elapsed >= self.spec.max_episode_steps:
            result = dataclasses.replace(result, truncated=True)
        return result
