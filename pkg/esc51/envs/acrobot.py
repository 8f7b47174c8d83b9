"""The two-link underactuated acrobot swing-up task."""
from __future__ import annotations

import dataclasses
import math

import numpy as np
import numpy.typing as npt

from esc51.envs import base

DT = 0.2
LINK_LENGTH_1 = 1.0
LINK_MASS_1 = 1.0
LINK_MASS_2 = 1.0
LINK_COM_POS_1 = 0.5
LINK_COM_POS_2 = 0.5
LINK_MOI = 1.0
GRAVITY = 9.8
MAX_VEL_1 = 4 * math.pi
MAX_VEL_2 = 9 * math.pi
AVAILABLE_TORQUE = (-1.0, 0.0, 1.0)
MAX_EPISODE_STEPS = 500

SPEC = base.EnvSpec(name="acrobot", observation_dim=6, action_count=3, max_episode_steps=MAX_EPISODE_STEPS)


@dataclasses.dataclass(frozen=True)
class AcrobotState:
    theta1: float
    theta2: float
    dtheta1: float
    dtheta2: float

    def observation(self) -> npt.NDArray[np.float64]:
        return np.array(
            [
                math.cos(self.theta1),
                math.sin(self.theta1),
                math.cos(self.theta2),
                math.sin(self.theta2),
                self.dtheta1,
                self.dtheta2,
            ],
            dtype=np.float64,
        )

    @property
    def solved(self) -> bool:
        return -math.cos(self.theta1) - math.cos(self.theta2 + self.theta1) > 1.0


def _derivatives(s: npt.NDArray[np.float64], torque: float) -> npt.NDArray[np.float64]:
    m1, m2 = LINK_MASS_1, LINK_MASS_2
    l1 = LINK_LENGTH_1
    lc1, lc2 = LINK_COM_POS_1, LINK_COM_POS_2
    i1 = i2 = LINK_MOI
    theta1, theta2, dtheta1, dtheta2 = s
    d1 = m1 * lc1**2 + m2 * (l1**2 + lc2**2 + 2 * l1 * lc2 * math.cos(theta2)) + i1 + i2
    d2 = m2 * (lc2**2 + l1 * lc2 * math.cos(theta2)) + i2
    phi2 = m2 * lc2 * GRAVITY * math.cos(theta1 + theta2 - math.pi / 2.0)
    phi1 = (
        -m2 * l1 * lc2 * dtheta2**2 * math.sin(theta2)
        - 2 * m2 * l1 * lc2 * dtheta2 * dtheta1 * math.sin(theta2)
        + (m1 * lc1 + m2 * l1) * GRAVITY * math.cos(theta1 - math.pi / 2)
        + phi2
    )
    ddtheta2 = (torque + d2 / d1 * phi1 - m2 * l1 * lc2 * dtheta1**2 * math.sin(theta2) - phi2) / (
        m2 * lc2**2 + i2 - d2**2 / d1
    )
    ddtheta1 = -(d2 * ddtheta2 + phi1) / d1
    return np.array([dtheta1, dtheta2, ddtheta1, ddtheta2])


def _rk4(s: npt.NDArray[np.float64], torque: float, dt: float) -> npt.NDArray[np.float64]:
    k1 = _derivatives(s, torque)
    k2 = _derivatives(s + dt / 2 * k1, torque)
    k3 = _derivatives(s + dt / 2 * k2, torque)
    k4 = _derivatives(s + dt * k3, torque)
    return s + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)


def _wrap(x: float, low: float, high: float) -> float:
    span = high - low
    while x > high:
        x -= span
    while x < low:
        x += span
    return x


def acrobot_reset(rng: np.random.Generator) -> AcrobotState:
    theta1, theta2, dtheta1, dtheta2 = rng.uniform(-0.1, 0.1, size=4)
    return AcrobotState(float(theta1), float(theta2), float(dtheta1), float(dtheta2))


def acrobot_step(state: AcrobotState, action: int) -> tuple[AcrobotState, base.StepResult]:
    """One 0.2 s Runge-Kutta step under torque -1, 0 or +1.

    :return: Next state and the step result; -1 reward until the tip swings above the bar, 0 on that step
    """
    if action not in (0, 1, 2):
        raise ValueError(f"Invalid action {action} for acrobot")
    s = np.array([state.theta1, state.theta2, state.dtheta1, state.dtheta2])
    ns = _rk4(s, AVAILABLE_TORQUE[action], DT)
    next_state = AcrobotState(
        theta1=_wrap(float(ns[0]), -math.pi, math.pi),
        theta2=_wrap(float(ns[1]), -math.pi, math.pi),
        dtheta1=float(np.clip(ns[2], -MAX_VEL_1, MAX_VEL_1)),
        dtheta2=float(np.clip(ns[3], -MAX_VEL_2, MAX_VEL_2)),
    )
    terminated = next_state.solved
    result = base.StepResult(
        obs=next_state.observation(), reward=0.0 if terminated else -1.0, terminated=terminated, truncated=False
    )
    return next_state, result


class Acrobot(base.Environment):
    """Swing the tip of a two-link pendulum above the bar using the middle joint."""

    spec = SPEC

    def __init__(self) -> None:
        self.state: AcrobotState | None = None
        self.elapsed = 0

    def reset(self, rng: np.random.Generator) -> npt.NDArray[np.float64]:
        self.state = acrobot_reset(rng)
        self.elapsed = 0
        return self.state.observation()

    def step(self, action: int) -> base.StepResult:
        if self.state is None:
            raise RuntimeError("Call reset before step")
        self.state, result = acrobot_step(self.state, action)
        self.elapsed += 1
        if not result.terminated and self.elapsed >= self.spec.max_episode_steps:
            result = dataclasses.replace(result, truncated=True)
        return result
