"""Shared scoring types.

A submission (a DSL program or a position-predictor program) is judged
against a list of test cases and summarized as a ``Score``:

* ``per_test`` -- fraction of test cases passed, the dense reward in [0, 1]
* ``full_pass`` -- binary reward, true iff every test case passed

The two signals are coupled by construction: ``full_pass`` is true exactly
when ``per_test == 1.0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Failure:
    """One failing test case, rendered for feedback messages.

    ``input`` is None for submission-level failures (no code block, parse
    error, ...) that are not tied to a single test case.
    """

    input: str | None
    expected: str
    observed: str

    def to_dict(self) -> dict[str, Any]:
        return {"input": self.input, "expected": self.expected, "observed": self.observed}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Failure":
        return cls(input=d.get("input"), expected=d["expected"], observed=d["observed"])


@dataclass(frozen=True)
class Score:
    n_tests: int
    n_passed: int
    failures: tuple[Failure, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.n_tests <= 0:
            raise ValueError("a score needs at least one test case")
        if not 0 <= self.n_passed <= self.n_tests:
            raise ValueError("n_passed out of range")

    @property
    def per_test(self) -> float:
        return self.n_passed / self.n_tests

    @property
    def full_pass(self) -> bool:
        return self.n_passed == self.n_tests

    def to_dict(self) -> dict[str, Any]:
        return {
            "per_test": self.per_test,
            "full_pass": self.full_pass,
            "n_tests": self.n_tests,
            "n_passed": self.n_passed,
            "failures": [f.to_dict() for f in self.failures],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Score":
        return cls(
            n_tests=int(d["n_tests"]),
            n_passed=int(d["n_passed"]),
            failures=tuple(Failure.from_dict(f) for f in d.get("failures", [])),
        )


def zero_score(n_tests: int, reason: Failure) -> Score:
    """Score for a submission that failed before any test ran."""
    return Score(n_tests=max(1, n_tests), n_passed=0, failures=(reason,))
