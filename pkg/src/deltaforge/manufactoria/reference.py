"""Hand-written reference machines for the Basic families.

These are committed solutions used as correctness anchors: each one must
agree with the family's specification oracle on every tape over {R, B} up to
length 6 (an exhaustive 127-tape check in the test suite).
"""

from __future__ import annotations

from deltaforge.manufactoria.families import ProblemInstance

_PAINTER_FOR = {"R": "PAINTER_RED", "B": "PAINTER_BLUE", "Y": "PAINTER_YELLOW", "G": "PAINTER_GREEN"}


def append_machine(pattern: str) -> str:
    """Accept anything; paint `pattern` onto the end of the tape."""
    lines = ["START start:", "    NEXT p0", ""]
    for i, color in enumerate(pattern):
        target = f"p{i + 1}" if i + 1 < len(pattern) else "end"
        lines += [f"{_PAINTER_FOR[color]} p{i}:", f"    NEXT {target}", ""]
    lines.append("END end")
    return "\n".join(lines) + "\n"


def exact_machine(pattern: str) -> str:
    """Accept exactly `pattern`: consume it color by color, then require
    an empty tape. Everything else falls into default NONE branches."""
    lines = ["START start:", "    NEXT q0", ""]
    for i, color in enumerate(pattern):
        lines += [f"PULLER_RB q{i}:", f"    [{color}] q{i + 1}", ""]
    final = len(pattern)
    lines += [f"PULLER_RB q{final}:", "    [EMPTY] end", "", "END end"]
    return "\n".join(lines) + "\n"


def start_machine(pattern: str) -> str:
    """Accept tapes starting with `pattern`; the remainder is irrelevant."""
    lines = ["START start:", "    NEXT q0", ""]
    for i, color in enumerate(pattern):
        target = f"q{i + 1}" if i + 1 < len(pattern) else "end"
        lines += [f"PULLER_RB q{i}:", f"    [{color}] {target}", ""]
    lines.append("END end")
    return "\n".join(lines) + "\n"


_BUILDERS = {
    "APPEND": append_machine,
    "EXACT": exact_machine,
    "START": start_machine,
}


def reference_program(instance: ProblemInstance) -> str:
    """DSL source of a known-good solution for a Basic-family instance."""
    builder = _BUILDERS.get(instance.family)
    if builder is None:
        raise ValueError(f"no reference machine for family '{instance.family}'")
    return builder(instance.params["pattern"])
