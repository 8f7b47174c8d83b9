"""Softmax exploration and its temperature schedule."""
from esc51.policy import softmax, temperature

TemperatureSchedule = temperature.TemperatureSchedule
tau_at = temperature.tau_at
softmax_probs = softmax.softmax_probs
sample_action = softmax.sample_action
greedy_action = softmax.greedy_action
