"""Test utilities."""
from esc51.test import doubles, oracles
