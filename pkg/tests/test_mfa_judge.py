"""Submission judging: verdict rules and the score contract."""

import pytest
from machines import HAS_BRRR_BUGGY, HAS_BRRR_SOLUTION, REJECT_EVERYTHING, fenced

from deltaforge.manufactoria.dsl import Outcome, RunLimits, parse_program
from deltaforge.manufactoria.families import TestCase as Case
from deltaforge.manufactoria.families import generate_tests, make_instance
from deltaforge.manufactoria.judge import judge_test, score_submission
from deltaforge.manufactoria.reference import reference_program


def decision(tape, expected):
    return Case(input=tape, expected=expected, kind="decision")


def transform(tape, expected):
    return Case(input=tape, expected=expected, kind="transform")


HAS_BRRR = make_instance("HAS", {"pattern": "BRRR"})


class TestJudgeTest:
    def test_accept_case_passes(self):
        program = parse_program(HAS_BRRR_SOLUTION)
        ok, result = judge_test(program, decision("BRRR", "accept"), HAS_BRRR)
        assert ok and result.outcome is Outcome.REACHED_END

    def test_end_with_wrong_tape_fails_transform(self):
        # Machine that accepts one red robot leaves "R" on the tape for "RR".
        src = "START s:\n    NEXT p\nPULLER_RB p:\n    [R] end\nEND end\n"
        program = parse_program(src)
        inst = make_instance("EXACT", {"pattern": "R"})
        ok, result = judge_test(program, transform("RR", ""), inst)
        assert not ok
        assert result.outcome is Outcome.REACHED_END and result.final_tape == "R"

    def test_loop_counts_as_rejection(self):
        src = "START s:\n    NEXT p\nPULLER_RB p:\n    [EMPTY] p\n    [R] p\n    [B] p\nEND end\n"
        program = parse_program(src)
        ok, result = judge_test(program, decision("RB", "reject"), HAS_BRRR)
        assert ok and result.outcome is Outcome.REJECTED_LOOP


class TestScoreSubmission:
    def test_reference_solution_full_pass(self):
        tests = generate_tests(HAS_BRRR, 20, seed=4)
        score = score_submission(fenced(HAS_BRRR_SOLUTION), HAS_BRRR, tests)
        assert score.full_pass and score.per_test == 1.0
        assert score.failures == ()

    def test_reject_everything_scores_half(self):
        inst = make_instance("EXACT", {"pattern": "RB"})
        tests = [decision("RB", "accept")] * 10 + [decision("BR", "reject")] * 10
        score = score_submission(fenced(REJECT_EVERYTHING), inst, tests)
        assert score.per_test == 0.5
        assert not score.full_pass
        assert len(score.failures) == 10

    def test_prose_scores_zero(self):
        tests = generate_tests(HAS_BRRR, 8, seed=1)
        score = score_submission("I think the answer is forty-two.", HAS_BRRR, tests)
        assert score.per_test == 0.0 and not score.full_pass
        assert score.failures[0].input is None

    def test_parse_error_scores_zero(self):
        tests = generate_tests(HAS_BRRR, 8, seed=1)
        score = score_submission(fenced("START s:\n    NEXT ghost\nEND end\n"), HAS_BRRR, tests)
        assert score.per_test == 0.0
        assert "parse error" in score.failures[0].observed

    def test_invalid_program_scores_zero(self):
        tests = generate_tests(HAS_BRRR, 8, seed=1)
        score = score_submission(fenced("START s:\nEND end\n"), HAS_BRRR, tests)
        assert score.per_test == 0.0
        assert "MissingRoute" in score.failures[0].observed

    def test_buggy_machine_fails_inner_substring(self):
        tests = [decision("BBRRR", "accept"), decision("BRRR", "accept")]
        score = score_submission(fenced(HAS_BRRR_BUGGY), HAS_BRRR, tests)
        failed_inputs = {f.input for f in score.failures}
        assert "BBRRR" in failed_inputs
        assert not score.full_pass

    def test_idempotent(self):
        tests = generate_tests(HAS_BRRR, 12, seed=7)
        a = score_submission(fenced(HAS_BRRR_SOLUTION), HAS_BRRR, tests)
        b = score_submission(fenced(HAS_BRRR_SOLUTION), HAS_BRRR, tests)
        assert a == b

    def test_reward_coupling(self):
        # full_pass is true exactly when per_test reaches 1.0.
        inst = make_instance("START", {"pattern": "BR"})
        tests = generate_tests(inst, 10, seed=3)
        for source in (reference_program(inst), REJECT_EVERYTHING):
            score = score_submission(fenced(source), inst, tests)
            assert score.full_pass == (score.per_test == 1.0)

    def test_uniform_limits_respected(self):
        tests = [decision("R" * 30, "reject")]
        limits = RunLimits(max_steps=5, max_tape_len=100)
        score = score_submission(fenced(HAS_BRRR_SOLUTION), HAS_BRRR, tests, limits)
        # Budget exhaustion counts as rejection, so the expected-reject passes.
        assert score.full_pass

    def test_monotonicity_under_added_passing_test(self):
        # Appending a passing case bumps numerator and denominator together.
        tests = generate_tests(HAS_BRRR, 10, seed=6)
        base = score_submission(fenced(HAS_BRRR_SOLUTION), HAS_BRRR, tests)
        grown = score_submission(fenced(HAS_BRRR_SOLUTION), HAS_BRRR,
                                 tests + [decision("BRRR", "accept")])
        assert grown.n_tests == base.n_tests + 1
        assert grown.n_passed == base.n_passed + 1
        assert grown.per_test >= base.per_test

    def test_limits_must_be_positive(self):
        with pytest.raises(ValueError):
            RunLimits(max_steps=0)
        with pytest.raises(ValueError):
            RunLimits(max_tape_len=0)


class TestReferenceMachines:
    def test_append_reference(self):
        inst = make_instance("APPEND", {"pattern": "RBR"})
        program = parse_program(reference_program(inst))
        tests = generate_tests(inst, 12, seed=2)
        assert all(judge_test(program, t, inst)[0] for t in tests)

    def test_exact_reference(self):
        inst = make_instance("EXACT", {"pattern": "RBB"})
        program = parse_program(reference_program(inst))
        tests = generate_tests(inst, 12, seed=2)
        assert all(judge_test(program, t, inst)[0] for t in tests)

    def test_start_reference(self):
        inst = make_instance("START", {"pattern": "BR"})
        program = parse_program(reference_program(inst))
        tests = generate_tests(inst, 12, seed=2)
        assert all(judge_test(program, t, inst)[0] for t in tests)
