"""Judging candidate programs against instance test suites.

Decision tests pass iff the machine's accept/reject verdict matches the
expected label; any rejected outcome (NONE route, loop, budget) counts as a
rejection. Transformation tests pass iff the machine reaches END and the
final tape equals the expected tape. A submission that cannot even be
extracted, parsed, or validated scores zero rather than raising, because RL
rollouts must always receive a reward.
"""

from __future__ import annotations

from deltaforge.manufactoria.dsl import (
    NoCodeBlock,
    Outcome,
    ParseError,
    Program,
    RunLimits,
    RunResult,
    extract_code_block,
    parse_program,
    run_machine,
    validate_program,
)
from deltaforge.manufactoria.families import ProblemInstance, TestCase
from deltaforge.scoring import Failure, Score, zero_score


def judge_test(
    program: Program,
    test: TestCase,
    instance: ProblemInstance,
    limits: RunLimits = RunLimits(),
) -> tuple[bool, RunResult]:
    """Run one test case; returns (passed, machine result)."""
    result = run_machine(program, test.input, limits)
    if instance.task_kind == "decision":
        if test.expected == "accept":
            passed = result.outcome is Outcome.REACHED_END
        else:
            passed = result.outcome is not Outcome.REACHED_END
    else:
        passed = result.outcome is Outcome.REACHED_END and result.final_tape == test.expected
    return passed, result


def _expected_text(test: TestCase) -> str:
    if test.kind == "decision":
        return test.expected
    return f"final tape '{test.expected}'"


def score_submission(
    response: str,
    instance: ProblemInstance,
    tests: list[TestCase],
    limits: RunLimits = RunLimits(),
) -> Score:
    """Extract, parse, validate, then judge every test case.

    Extraction, parse, and validation failures yield per_test = 0 with a
    single diagnostic failure entry.
    """
    if not tests:
        raise ValueError("cannot score against an empty test suite")
    n = len(tests)
    try:
        source = extract_code_block(response)
    except NoCodeBlock as exc:
        return zero_score(n, Failure(None, "a fenced code block", f"no code block: {exc}"))
    try:
        program = parse_program(source)
    except ParseError as exc:
        return zero_score(n, Failure(None, "a well-formed program", f"parse error: {exc}"))
    diags = validate_program(program)
    if diags:
        detail = "; ".join(f"{d.rule}({d.node_id})" for d in diags)
        return zero_score(n, Failure(None, "a structurally valid program", f"validation: {detail}"))

    failures: list[Failure] = []
    passed = 0
    for test in tests:
        ok, result = judge_test(program, test, instance, limits)
        if ok:
            passed += 1
        else:
            failures.append(Failure(test.input, _expected_text(test), result.describe()))
    return Score(n_tests=n, n_passed=passed, failures=tuple(failures))
