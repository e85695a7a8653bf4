"""Failure feedback rendered as continuation text.

The trainer splices this where the generation previously ended (in place of
the EOS token) and lets the model keep going; it lists up to `cap` failing
cases with input, expected, and observed outcome. Full-pass scores yield an
empty message.
"""

from __future__ import annotations

from deltaforge.scoring import Score

DEFAULT_FEEDBACK_CAP = 3


def format_failure_feedback(score: Score, cap: int = DEFAULT_FEEDBACK_CAP) -> str:
    if score.full_pass or not score.failures:
        return ""
    shown = score.failures[:cap]
    lines = [
        "",
        f"Wait, the verifier reports {score.n_tests - score.n_passed} of "
        f"{score.n_tests} test cases failing. Failing cases:",
    ]
    for failure in shown:
        case = "submission" if failure.input is None else f"input '{failure.input}'"
        lines.append(f"- {case}: expected {failure.expected}, observed {failure.observed}")
    remaining = len(score.failures) - len(shown)
    if remaining > 0:
        lines.append(f"- ... and {remaining} more failing case(s)")
    lines.append("Let me reconsider and fix the solution.")
    return "\n".join(lines) + "\n"
