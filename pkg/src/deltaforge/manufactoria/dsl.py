"""The factory DSL: colored tapes routed through puller and painter nodes.

A program is a directed graph of nodes. A robot carrying a tape (a string
over the colors R, B, Y, G; index 0 is the front) enters at the START node
and is routed until it reaches END (accepted), is routed to the literal
target NONE (rejected), revisits a (node, tape) configuration (rejected as
an infinite loop), or exhausts the step / tape-length budget.

Node semantics:

* START / PAINTER_* follow their single NEXT route; a painter first appends
  its color to the *end* of the tape.
* PULLER_RB inspects the front of the tape: on R or B it removes that color
  and follows the matching branch; otherwise (empty tape, or front is Y/G)
  it follows the EMPTY branch *without removing anything*.
* PULLER_YG is symmetric for Y/G.
* Unspecified puller branches default to NONE.

Grammar (one node block per directive, comments start with ``#``):

    START <id>:
        NEXT <target>

    PULLER_RB <id>:
        [R] <target>
        [B] <target>
        [EMPTY] <target>

    PAINTER_RED <id>:
        NEXT <target>

    END <id>

Targets are node ids or the literal NONE. Identifiers match
``[A-Za-z0-9_]+`` and are case sensitive, as are keywords and branch labels.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

COLORS = "RBYG"

_IDENT_RE = re.compile(r"^[A-Za-z0-9_]+$")
_FENCE_RE = re.compile(r"```([^\n`]*)\n(.*?)```", re.DOTALL)


class NodeKind(enum.Enum):
    START = "START"
    PULLER_RB = "PULLER_RB"
    PULLER_YG = "PULLER_YG"
    PAINTER_RED = "PAINTER_RED"
    PAINTER_BLUE = "PAINTER_BLUE"
    PAINTER_YELLOW = "PAINTER_YELLOW"
    PAINTER_GREEN = "PAINTER_GREEN"
    END = "END"


PAINT_COLOR = {
    NodeKind.PAINTER_RED: "R",
    NodeKind.PAINTER_BLUE: "B",
    NodeKind.PAINTER_YELLOW: "Y",
    NodeKind.PAINTER_GREEN: "G",
}

PULL_COLORS = {
    NodeKind.PULLER_RB: "RB",
    NodeKind.PULLER_YG: "YG",
}

# Branch labels each node kind accepts in its block.
_BRANCH_LABELS = {
    NodeKind.START: ("NEXT",),
    NodeKind.PAINTER_RED: ("NEXT",),
    NodeKind.PAINTER_BLUE: ("NEXT",),
    NodeKind.PAINTER_YELLOW: ("NEXT",),
    NodeKind.PAINTER_GREEN: ("NEXT",),
    NodeKind.PULLER_RB: ("R", "B", "EMPTY"),
    NodeKind.PULLER_YG: ("Y", "G", "EMPTY"),
    NodeKind.END: (),
}


class ParseError(Exception):
    """Raised on any malformed program text.

    ``kind`` is one of: MissingStart, MissingEnd, DuplicateId, UnknownTarget,
    BadBranchLabel, SyntaxError.
    """

    def __init__(self, kind: str, message: str, line: int | None = None):
        self.kind = kind
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{kind}: {message}{where}")


class NoCodeBlock(Exception):
    """The response text contains no usable fenced code block."""


@dataclass(frozen=True)
class Diagnostic:
    rule: str
    node_id: str
    message: str


@dataclass(frozen=True)
class Node:
    id: str
    kind: NodeKind
    # Branch label -> target node id, or None for the literal NONE.
    # For pullers every legal label is present (unspecified ones filled with
    # None at parse time); for START/painters NEXT may be absent entirely,
    # which validate_program reports as MissingRoute.
    routes: dict[str, str | None] = field(default_factory=dict)


@dataclass(frozen=True)
class Program:
    nodes: dict[str, Node]
    start_id: str
    end_id: str
    # Non-fatal oddities noticed while parsing (e.g. duplicate branch
    # labels); surfaced by validate_program. Excluded from equality so the
    # canonical-print round trip compares structure only.
    parse_notes: tuple[Diagnostic, ...] = field(default_factory=tuple, compare=False)

    def to_source(self) -> str:
        """Render canonical DSL text; parsing it back yields an equal Program."""
        blocks: list[str] = []
        for node in self.nodes.values():
            kw = node.kind.value
            if node.kind is NodeKind.END:
                blocks.append(f"END {node.id}")
                continue
            lines = [f"{kw} {node.id}:"]
            for label in _BRANCH_LABELS[node.kind]:
                if label not in node.routes:
                    continue  # genuinely absent (unrouted START/painter)
                target = node.routes[label]
                if target is None and node.kind in PULL_COLORS:
                    continue  # default branch, omit
                rendered = target if target is not None else "NONE"
                prefix = label if label == "NEXT" else f"[{label}]"
                lines.append(f"    {prefix} {rendered}")
            blocks.append("\n".join(lines))
        return "\n\n".join(blocks) + "\n"


@dataclass(frozen=True)
class RunLimits:
    max_steps: int = 10_000
    max_tape_len: int = 1_000

    def __post_init__(self) -> None:
        if self.max_steps <= 0 or self.max_tape_len <= 0:
            raise ValueError("limits must be strictly positive")


class Outcome(enum.Enum):
    REACHED_END = "reached_end"
    REJECTED_NONE_ROUTE = "rejected_none_route"
    REJECTED_LOOP = "rejected_loop"
    REJECTED_BUDGET = "rejected_budget"


@dataclass(frozen=True)
class RunResult:
    outcome: Outcome
    steps_taken: int
    # Tape exactly as it was on arrival at END; None for rejections.
    final_tape: str | None = None

    @property
    def accepted(self) -> bool:
        return self.outcome is Outcome.REACHED_END

    def describe(self) -> str:
        if self.outcome is Outcome.REACHED_END:
            return f"reached END with tape '{self.final_tape}'"
        if self.outcome is Outcome.REJECTED_NONE_ROUTE:
            return "rejected: routed to NONE"
        if self.outcome is Outcome.REJECTED_LOOP:
            return "rejected: infinite loop"
        return "rejected: step or tape budget exceeded"


def extract_code_block(response: str, tag: str = "manufactoria") -> str:
    """Pull the program text out of a model response.

    Returns the contents of the last fenced block tagged ``tag``; if there is
    none, the last untagged fenced block. Raises NoCodeBlock otherwise.
    """
    blocks = [(m.group(1).strip(), m.group(2)) for m in _FENCE_RE.finditer(response)]
    if not blocks:
        raise NoCodeBlock("no fenced code block in response")
    tagged = [body for info, body in blocks if info == tag]
    if tagged:
        return tagged[-1].rstrip("\n")
    untagged = [body for info, body in blocks if info == ""]
    if untagged:
        return untagged[-1].rstrip("\n")
    raise NoCodeBlock(f"no fenced block tagged '{tag}' and no untagged block")


def _strip_comment(line: str) -> str:
    idx = line.find("#")
    return line if idx < 0 else line[:idx]


def parse_program(source: str) -> Program:
    """Parse DSL text into a Program.

    Strict about node kinds (bare ``id:`` headers are rejected) and about
    exactly one START and one END directive. Unspecified puller branches
    default to NONE. Raises ParseError; duplicate branch labels within one
    block are recorded as parse notes for validate_program (the last
    occurrence wins for execution).
    """
    nodes: dict[str, Node] = {}
    notes: list[Diagnostic] = []
    start_id: str | None = None
    end_id: str | None = None
    current: Node | None = None
    # (target, line) pairs to resolve once all ids are known
    pending_targets: list[tuple[str, int]] = []

    def open_node(kind: NodeKind, ident: str, line_no: int) -> Node:
        nonlocal start_id, end_id
        if not _IDENT_RE.match(ident):
            raise ParseError("SyntaxError", f"bad identifier '{ident}'", line_no)
        if ident in nodes:
            raise ParseError("DuplicateId", f"node '{ident}' declared twice", line_no)
        if kind is NodeKind.START:
            if start_id is not None:
                raise ParseError("SyntaxError", "multiple START directives", line_no)
            start_id = ident
        if kind is NodeKind.END:
            if end_id is not None:
                raise ParseError("SyntaxError", "multiple END directives", line_no)
            end_id = ident
        node = Node(id=ident, kind=kind, routes={})
        nodes[ident] = node
        return node

    for line_no, raw in enumerate(source.splitlines(), start=1):
        text = _strip_comment(raw).strip()
        if not text:
            continue
        parts = text.split()
        head = parts[0]

        kind_name = head[:-1] if head.endswith(":") else head
        if kind_name in NodeKind.__members__:
            kind = NodeKind[kind_name]
            if len(parts) != 2:
                raise ParseError("SyntaxError", f"expected '{kind_name} <id>'", line_no)
            ident = parts[1]
            if ident.endswith(":"):
                ident = ident[:-1]
            elif kind is not NodeKind.END:
                raise ParseError("SyntaxError", f"missing ':' after '{kind_name} {ident}'", line_no)
            current = open_node(kind, ident, line_no)
            continue

        # Branch line inside the current block.
        if current is None:
            raise ParseError("SyntaxError", f"route line '{text}' outside any node block", line_no)
        if len(parts) != 2:
            raise ParseError("SyntaxError", f"expected '<branch> <target>', got '{text}'", line_no)
        label_tok, target = parts
        if label_tok.startswith("[") and label_tok.endswith("]"):
            label = label_tok[1:-1]
        elif label_tok == "NEXT":
            label = "NEXT"
        else:
            raise ParseError("BadBranchLabel", f"unrecognized branch '{label_tok}'", line_no)
        allowed = _BRANCH_LABELS[current.kind]
        if not allowed:
            # Routes declared under END; keep them so validation can flag it.
            current.routes[label] = None if target == "NONE" else target
            notes.append(Diagnostic("EndHasRoute", current.id, f"END node routes '{label}'"))
            if target != "NONE":
                pending_targets.append((target, line_no))
            continue
        if label not in allowed:
            raise ParseError(
                "BadBranchLabel",
                f"branch '{label}' not valid for {current.kind.value} (allowed: {', '.join(allowed)})",
                line_no,
            )
        if label in current.routes:
            notes.append(
                Diagnostic("DuplicateBranch", current.id, f"branch '{label}' declared twice")
            )
        if target != "NONE":
            if not _IDENT_RE.match(target):
                raise ParseError("SyntaxError", f"bad target '{target}'", line_no)
            pending_targets.append((target, line_no))
        current.routes[label] = None if target == "NONE" else target

    if start_id is None:
        raise ParseError("MissingStart", "no START directive")
    if end_id is None:
        raise ParseError("MissingEnd", "no END directive")
    for target, line_no in pending_targets:
        if target not in nodes:
            raise ParseError("UnknownTarget", f"route names unknown node '{target}'", line_no)

    # Unspecified puller branches default to NONE.
    for node in nodes.values():
        if node.kind in PULL_COLORS:
            for label in _BRANCH_LABELS[node.kind]:
                node.routes.setdefault(label, None)

    return Program(nodes=nodes, start_id=start_id, end_id=end_id, parse_notes=tuple(notes))


def validate_program(program: Program) -> list[Diagnostic]:
    """Structural checks beyond grammar; empty list means all rules hold."""
    diags = [d for d in program.parse_notes]
    for node in program.nodes.values():
        if node.kind is NodeKind.END:
            continue  # EndHasRoute already noted at parse time
        if "NEXT" in _BRANCH_LABELS[node.kind] and "NEXT" not in node.routes:
            diags.append(Diagnostic("MissingRoute", node.id, f"{node.kind.value} has no NEXT route"))
    return diags


def run_machine(program: Program, tape: str, limits: RunLimits = RunLimits()) -> RunResult:
    """Execute the program on a tape; total by construction of the limits.

    Loop rejection is exact: a revisited (node id, tape) configuration
    proves divergence because the machine is deterministic. Painters can grow
    the tape without bound, so the step and tape-length budgets back the
    cycle check.
    """
    node = program.nodes[program.start_id]
    steps = 0
    seen: set[tuple[str, str]] = set()

    while True:
        if node.kind is NodeKind.END:
            return RunResult(Outcome.REACHED_END, steps, final_tape=tape)
        config = (node.id, tape)
        if config in seen:
            return RunResult(Outcome.REJECTED_LOOP, steps)
        seen.add(config)
        if steps >= limits.max_steps:
            return RunResult(Outcome.REJECTED_BUDGET, steps)

        kind = node.kind
        if kind in PULL_COLORS:
            pullable = PULL_COLORS[kind]
            if tape and tape[0] in pullable:
                label = tape[0]
                tape = tape[1:]
            else:
                label = "EMPTY"  # routes only, tape untouched
            target = node.routes.get(label)
        else:
            if kind in PAINT_COLOR:
                tape = tape + PAINT_COLOR[kind]
                if len(tape) > limits.max_tape_len:
                    return RunResult(Outcome.REJECTED_BUDGET, steps + 1)
            target = node.routes.get("NEXT")

        steps += 1
        if target is None:
            return RunResult(Outcome.REJECTED_NONE_ROUTE, steps)
        node = program.nodes[target]
