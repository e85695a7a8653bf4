"""Tape-machine DSL scope: parsing, execution, problem families, judging."""

from deltaforge.manufactoria.dsl import (
    COLORS,
    Node,
    NodeKind,
    Outcome,
    ParseError,
    NoCodeBlock,
    Program,
    RunLimits,
    RunResult,
    Diagnostic,
    extract_code_block,
    parse_program,
    run_machine,
    validate_program,
)
from deltaforge.manufactoria.families import (
    ALL_FAMILIES,
    DECISION_FAMILIES,
    TRANSFORM_FAMILIES,
    TIERS,
    AlphabetError,
    InfeasibleBalance,
    ProblemInstance,
    TestCase,
    decode_tape,
    encode_value,
    generate_tests,
    make_instance,
    sample_instance,
    spec_eval,
)
from deltaforge.manufactoria.prompt import render_prompt
from deltaforge.manufactoria.judge import judge_test, score_submission

__all__ = [
    "COLORS",
    "Node",
    "NodeKind",
    "Outcome",
    "ParseError",
    "NoCodeBlock",
    "Program",
    "RunLimits",
    "RunResult",
    "Diagnostic",
    "extract_code_block",
    "parse_program",
    "run_machine",
    "validate_program",
    "ALL_FAMILIES",
    "DECISION_FAMILIES",
    "TRANSFORM_FAMILIES",
    "TIERS",
    "AlphabetError",
    "InfeasibleBalance",
    "ProblemInstance",
    "TestCase",
    "decode_tape",
    "encode_value",
    "generate_tests",
    "make_instance",
    "sample_instance",
    "spec_eval",
    "render_prompt",
    "judge_test",
    "score_submission",
]
