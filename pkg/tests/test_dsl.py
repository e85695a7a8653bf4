"""Parser and interpreter tests for the tape-machine DSL."""

import pytest

from deltaforge.manufactoria.dsl import (
    NoCodeBlock,
    Outcome,
    ParseError,
    RunLimits,
    extract_code_block,
    parse_program,
    run_machine,
    validate_program,
)

# Simple known-good machine: accepts robots carrying exactly one red tape.
EXACTLY_ONE_RED = """\
START start:
    NEXT entry

PULLER_RB entry:
    [R] end

END end
"""


def structure(program):
    return (
        program.start_id,
        program.end_id,
        {nid: (n.kind, dict(n.routes)) for nid, n in program.nodes.items()},
    )


class TestParse:
    def test_example_program(self):
        p = parse_program(EXACTLY_ONE_RED)
        assert len(p.nodes) == 3
        assert p.start_id == "start" and p.end_id == "end"
        # Unspecified branches default to NONE.
        assert p.nodes["entry"].routes == {"R": "end", "B": None, "EMPTY": None}

    def test_empty_source_missing_start(self):
        with pytest.raises(ParseError) as err:
            parse_program("")
        assert err.value.kind == "MissingStart"

    def test_missing_end(self):
        with pytest.raises(ParseError) as err:
            parse_program("START start:\n    NEXT start\n")
        assert err.value.kind == "MissingEnd"

    def test_duplicate_id(self):
        src = "START s:\n    NEXT entry\nPULLER_RB entry:\nPULLER_RB entry:\nEND end\n"
        with pytest.raises(ParseError) as err:
            parse_program(src)
        assert err.value.kind == "DuplicateId"

    def test_unknown_target(self):
        src = "START s:\n    NEXT ghost\nEND end\n"
        with pytest.raises(ParseError) as err:
            parse_program(src)
        assert err.value.kind == "UnknownTarget"

    def test_bad_branch_label(self):
        src = "START s:\n    NEXT p\nPULLER_RB p:\n    [Y] end\nEND end\n"
        with pytest.raises(ParseError) as err:
            parse_program(src)
        assert err.value.kind == "BadBranchLabel"

    def test_bare_header_rejected(self):
        # Strict syntax: nodes must declare their kind.
        src = "START s:\n    NEXT s0\ns0:\n    [R] end\nEND end\n"
        with pytest.raises(ParseError) as err:
            parse_program(src)
        assert err.value.line is not None

    def test_comments_stripped(self):
        src = "# top comment\nSTART s:  # trailing\n    NEXT end  # route\nEND end\n"
        p = parse_program(src)
        assert p.nodes["s"].routes == {"NEXT": "end"}

    def test_lowercase_keyword_rejected(self):
        with pytest.raises(ParseError):
            parse_program("start s:\n    NEXT end\nEND end\n")

    def test_roundtrip_structure(self):
        p1 = parse_program(EXACTLY_ONE_RED)
        p2 = parse_program(p1.to_source())
        assert structure(p1) == structure(p2)
        assert p1 == p2

    def test_syntax_error_carries_line(self):
        src = "START s:\n    NEXT end\nwhat is this\nEND end\n"
        with pytest.raises(ParseError) as err:
            parse_program(src)
        assert err.value.line == 3


class TestValidate:
    def test_known_good_program_clean(self):
        assert validate_program(parse_program(EXACTLY_ONE_RED)) == []

    def test_start_missing_next(self):
        p = parse_program("START s:\nEND end\n")
        diags = validate_program(p)
        assert [d.rule for d in diags] == ["MissingRoute"]
        assert diags[0].node_id == "s"

    def test_end_with_route(self):
        p = parse_program("START s:\n    NEXT end\nEND end\n    NEXT s\n")
        assert "EndHasRoute" in [d.rule for d in validate_program(p)]

    def test_duplicate_branch_flagged(self):
        src = "START s:\n    NEXT p\nPULLER_RB p:\n    [R] end\n    [R] s\nEND end\n"
        p = parse_program(src)
        assert "DuplicateBranch" in [d.rule for d in validate_program(p)]


class TestRun:
    def test_one_red_accepts_r(self):
        # Hand simulation: start->entry (1), entry pulls R -> end (2).
        p = parse_program(EXACTLY_ONE_RED)
        r = run_machine(p, "R")
        assert r.outcome is Outcome.REACHED_END
        assert r.final_tape == ""
        assert r.steps_taken == 2

    def test_one_red_rejects_b_via_none(self):
        p = parse_program(EXACTLY_ONE_RED)
        r = run_machine(p, "B")
        assert r.outcome is Outcome.REJECTED_NONE_ROUTE

    def test_empty_branch_self_loop(self):
        src = "START s:\n    NEXT p\nPULLER_RB p:\n    [EMPTY] p\nEND end\n"
        r = run_machine(parse_program(src), "")
        assert r.outcome is Outcome.REJECTED_LOOP
        assert r.steps_taken == 2  # start->p, p->p, second visit of (p, "")

    def test_empty_branch_does_not_consume(self):
        # Y in front of an RB puller routes EMPTY and keeps the tape.
        src = (
            "START s:\n    NEXT p\n"
            "PULLER_RB p:\n    [EMPTY] q\n"
            "PULLER_YG q:\n    [Y] end\n"
            "END end\n"
        )
        r = run_machine(parse_program(src), "Y")
        assert r.outcome is Outcome.REACHED_END
        assert r.final_tape == ""

    def test_painter_appends_to_end(self):
        src = "START s:\n    NEXT p\nPAINTER_GREEN p:\n    NEXT end\nEND end\n"
        r = run_machine(parse_program(src), "RB")
        assert r.final_tape == "RBG"

    def test_painter_loop_hits_budget(self):
        src = "START s:\n    NEXT p\nPAINTER_RED p:\n    NEXT p\nEND end\n"
        r = run_machine(parse_program(src), "", RunLimits(max_steps=50, max_tape_len=1000))
        assert r.outcome is Outcome.REJECTED_BUDGET
        assert r.steps_taken <= 50

    def test_painter_loop_hits_tape_cap(self):
        src = "START s:\n    NEXT p\nPAINTER_RED p:\n    NEXT p\nEND end\n"
        r = run_machine(parse_program(src), "", RunLimits(max_steps=10_000, max_tape_len=20))
        assert r.outcome is Outcome.REJECTED_BUDGET

    def test_budget_monotonicity(self):
        # Enlarging max_steps never changes a non-budget outcome.
        progs = [
            EXACTLY_ONE_RED,
            "START s:\n    NEXT p\nPULLER_RB p:\n    [EMPTY] p\nEND end\n",
        ]
        for src in progs:
            p = parse_program(src)
            for tape in ["", "R", "B", "RB"]:
                small = run_machine(p, tape, RunLimits(max_steps=100))
                big = run_machine(p, tape, RunLimits(max_steps=100_000))
                if small.outcome is not Outcome.REJECTED_BUDGET:
                    assert small == big

    def test_determinism(self):
        p = parse_program(EXACTLY_ONE_RED)
        runs = {run_machine(p, "RBR") for _ in range(5)}
        assert len(runs) == 1

    def test_tape_deltas(self):
        # Puller consumption shortens by 1, painting lengthens by 1,
        # EMPTY routing leaves the tape alone: verify via final tape algebra.
        src = (
            "START s:\n    NEXT pull\n"
            "PULLER_RB pull:\n    [R] paint\n    [B] paint\n    [EMPTY] paint\n"
            "PAINTER_YELLOW paint:\n    NEXT end\n"
            "END end\n"
        )
        p = parse_program(src)
        assert run_machine(p, "RB").final_tape == "BY"  # -1 +1
        assert run_machine(p, "").final_tape == "Y"  # +1 only


class TestExtract:
    def test_tagged_block_preferred(self):
        text = "intro\n```python\nx = 1\n```\nthen\n```manufactoria\nSTART s:\n```\n"
        assert extract_code_block(text) == "START s:"

    def test_last_untagged_block(self):
        text = "```\nfirst\n```\nmore\n```\nsecond\n```\n"
        assert extract_code_block(text) == "second"

    def test_no_block(self):
        with pytest.raises(NoCodeBlock):
            extract_code_block("plain prose, no fences")

    def test_last_tagged_wins(self):
        text = "```manufactoria\nold\n```\n```manufactoria\nnew\n```\n"
        assert extract_code_block(text) == "new"
