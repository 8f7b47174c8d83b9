"""Categorical distributional reinforcement learning with expected-Sarsa backups."""

__version__ = "0.1.0"
