"""Experience replay."""
from esc51.replay import buffer

Transition = buffer.Transition
TransitionBatch = buffer.TransitionBatch
ReplayBuffer = buffer.ReplayBuffer
