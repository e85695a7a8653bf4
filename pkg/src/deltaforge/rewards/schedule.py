"""Two-phase reward schedule.

During warm-up the reward is the dense per-test pass rate, which gives
gradient signal on tasks where no rollout fully passes; after warmup_steps
it switches to the strict binary full-pass indicator. Piecewise constant in
the step with exactly one transition.
"""

from __future__ import annotations

from dataclasses import dataclass

from deltaforge.scoring import Score

DEFAULT_WARMUP_STEPS = 100


@dataclass(frozen=True)
class RewardSchedule:
    warmup_steps: int = DEFAULT_WARMUP_STEPS

    def __post_init__(self) -> None:
        if self.warmup_steps < 0:
            raise ValueError("warmup_steps must be non-negative")


def staged_reward(step: int, schedule: RewardSchedule, score: Score) -> float:
    """per_test before warmup_steps, binary full-pass from there on."""
    if step < 0:
        raise ValueError("step must be non-negative")
    if step < schedule.warmup_steps:
        return score.per_test
    return 1.0 if score.full_pass else 0.0
