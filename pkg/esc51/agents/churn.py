"""Policy churn: how often the greedy action flips between gradient steps."""
from __future__ import annotations

import dataclasses

import numpy as np
import numpy.typing as npt

from esc51.categorical import Support
from esc51.network import q_values
from esc51.network.mlp import DistributionPredictor


@dataclasses.dataclass
class ChurnProbe:
    """A fixed set of probe observations and the greedy actions last seen on them."""

    probe_states: npt.NDArray[np.float64]
    previous_greedy: npt.NDArray[np.int64]

    def __post_init__(self) -> None:
        if len(self.probe_states) == 0:
            raise ValueError("A churn probe needs at least one state")
        self.probe_states = np.array(self.probe_states, dtype=np.float64)
        self.probe_states.flags.writeable = False

    @classmethod
    def create(cls, states: npt.ArrayLike, net: DistributionPredictor, support: Support) -> ChurnProbe:
        states = np.asarray(states, dtype=np.float64)
        return cls(probe_states=states, previous_greedy=_greedy(states, net, support))


def _greedy(states: npt.NDArray[np.float64], net: DistributionPredictor, support: Support) -> npt.NDArray[np.int64]:
    return np.argmax(q_values(net.forward(states), support), axis=1)


def churn_rate(probe: ChurnProbe, net: DistributionPredictor, support: Support) -> float:
    """Fraction of probe states whose greedy action changed since the last call, then remember the new ones."""
    greedy = _greedy(probe.probe_states, net, support)
    rate = float(np.mean(greedy != probe.previous_greedy))
    probe.previous_greedy = greedy
    return rate
