"""Shared DSL fixture machines used across test modules."""

# Substring detector for BRRR over the full color alphabet: a KMP-style
# scanner that restarts on Y/G and tracks how much of the pattern matched.
HAS_BRRR_SOLUTION = """\
START start:
    NEXT s0

PULLER_RB s0:
    [R] s0
    [B] s1
    [EMPTY] yg0

PULLER_YG yg0:
    [Y] s0
    [G] s0
    [EMPTY] s0

PULLER_RB s1:
    [R] s2
    [B] s1
    [EMPTY] yg1

PULLER_YG yg1:
    [Y] s0
    [G] s0
    [EMPTY] s0

PULLER_RB s2:
    [R] s3
    [B] s1
    [EMPTY] yg2

PULLER_YG yg2:
    [Y] s0
    [G] s0
    [EMPTY] s0

PULLER_RB s3:
    [R] end
    [B] s1
    [EMPTY] yg3

PULLER_YG yg3:
    [Y] s0
    [G] s0
    [EMPTY] s0

END end
"""

# A buggy BRRR detector in strict syntax: it only matches a BRRR prefix and
# funnels every partial mismatch into a dead-end sink, so tapes like BBRRR
# (substring present but not a prefix) are wrongly rejected.
HAS_BRRR_BUGGY = """\
START start:
    NEXT s0

PULLER_RB s0:
    [B] s1
    [R] s5
    [EMPTY] s5

PULLER_RB s1:
    [R] s2
    [B] s5
    [EMPTY] s5

PULLER_RB s2:
    [R] s3
    [B] s5
    [EMPTY] s5

PULLER_RB s3:
    [R] end
    [B] s5
    [EMPTY] s5

PULLER_RB s5:

END end
"""

# Rejects every robot: all branches fall through to the default NONE.
REJECT_EVERYTHING = """\
START start:
    NEXT sink

PULLER_RB sink:

END end
"""


def fenced(source: str, tag: str = "manufactoria") -> str:
    """Wrap DSL source the way a model response would."""
    return f"Here is my solution:\n\n```{tag}\n{source}```\n"
