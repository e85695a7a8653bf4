"""Tour of the reward layer the way an RL trainer would drive it: staged
rewards across the warm-up boundary, replay of successful traces, and
failure feedback spliced into a continued generation.

Run:  python3 demos/reward_loop_tour.py
"""

import tempfile
from pathlib import Path

from deltaforge.manufactoria import generate_tests, sample_instance, score_submission
from deltaforge.manufactoria.reference import reference_program
from deltaforge.rewards import ReplayStore, RewardSchedule, format_failure_feedback, staged_reward


def main() -> None:
    instance = sample_instance("EXACT", seed=11)
    tests = generate_tests(instance, 16, seed=0)
    print("task:", instance.criteria_text)

    solution = f"```manufactoria\n{reference_program(instance)}```"
    sloppy = "```manufactoria\nSTART s:\n    NEXT sink\nPULLER_RB sink:\nEND end\n```"

    good = score_submission(solution, instance, tests)
    bad = score_submission(sloppy, instance, tests)
    print(f"reference: per_test={good.per_test:.2f}; reject-all: per_test={bad.per_test:.2f}")

    # Staged schedule: dense during warm-up, binary afterwards.
    schedule = RewardSchedule(warmup_steps=100)
    for step in (0, 99, 100, 500):
        print(f"  step {step:3d}: reward(reject-all)={staged_reward(step, schedule, bad):.2f} "
              f"reward(reference)={staged_reward(step, schedule, good):.2f}")

    # Replay store: only full passes enter; the newest three come back.
    with tempfile.TemporaryDirectory() as tmp:
        store = ReplayStore(Path(tmp) / "replay.jsonl")
        for attempt in range(5):
            store.record_success(instance.id, f"reasoning trace #{attempt}\n{solution}", good)
        recent = store.fetch_recent(instance.id, k=3)
        print(f"\nreplay serves {len(recent)} of {store.count(instance.id)} stored traces:")
        for trace in recent:
            print("  -", trace.trace.splitlines()[0])

    # Feedback-in-the-loop: what the trainer splices in place of EOS.
    feedback = format_failure_feedback(bad, cap=2)
    print("\nfeedback continuation:")
    print(feedback)


if __name__ == "__main__":
    main()
