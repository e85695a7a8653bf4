"""Reward schedules, replay storage, and failure feedback for RL trainers."""

from deltaforge.rewards.schedule import RewardSchedule, staged_reward
from deltaforge.rewards.replay import NotFullPass, ReplayStore, ReplayTrace
from deltaforge.rewards.feedback import format_failure_feedback

__all__ = [
    "RewardSchedule",
    "staged_reward",
    "NotFullPass",
    "ReplayStore",
    "ReplayTrace",
    "format_failure_feedback",
]
