"""Exact and simulated checks of the pentagonal number theorem via insertion shuffles."""

from .pattern_events import Mark, Pattern, event_probability, membership
from .qseries import INFINITY, TruncatedSeries, pentagonal_sum, pochhammer
from .shuffle_core import apply_insertion, decode_trajectory, predecessor, trajectory_probability

__all__ = [
    "INFINITY",
    "Mark",
    "Pattern",
    "TruncatedSeries",
    "apply_insertion",
    "decode_trajectory",
    "event_probability",
    "membership",
    "pentagonal_sum",
    "pochhammer",
    "predecessor",
    "trajectory_probability",
]
