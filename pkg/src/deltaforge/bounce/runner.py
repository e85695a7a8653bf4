"""Isolated execution and scoring of candidate predictor programs.

A candidate is Python source defining predict_position(t). It runs in a
child process under a generated harness that executes the source in a fresh
namespace for every timestamp (no state carry-over), calls the function, and
writes one line per timestamp to stdout: the flattened ball positions as
2-decimal fixed-point numbers, ball order preserved:

    <x1> <y1> <x2> <y2> ...\n

That line grammar is the wire format; any runner that emits it can be
scored. The harness installs guards that kill the process on filesystem
writes or socket use, the parent enforces a wall-clock timeout and an
address-space cap, and every failure mode maps to a zero score rather than
an exception.
"""

from __future__ import annotations

import math
import shlex
import subprocess
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from deltaforge.bounce.dataset import DatasetEntry
from deltaforge.scoring import Failure, Score, zero_score

_FORBIDDEN_EXIT = 13
_FORMAT_EXIT = 3

_HARNESS_TEMPLATE = '''\
import builtins
import math
import resource
import socket
import sys

resource.setrlimit(resource.RLIMIT_AS, ({memory_cap}, {memory_cap}))

_real_open = builtins.open

def _guarded_open(file, mode="r", *args, **kwargs):
    if any(flag in mode for flag in "wax+"):
        sys.exit({forbidden_exit})
    return _real_open(file, mode, *args, **kwargs)

def _no_sockets(*args, **kwargs):
    sys.exit({forbidden_exit})

builtins.open = _guarded_open
socket.socket = _no_sockets
socket.create_connection = _no_sockets

SOURCE = {source!r}
TIMESTAMPS = {timestamps!r}
N_BALLS = {n_balls}

lines = []
for t in TIMESTAMPS:
    namespace = {{"__name__": "__candidate__"}}
    exec(compile(SOURCE, "<candidate>", "exec"), namespace)
    fn = namespace.get("predict_position")
    if not callable(fn):
        sys.exit({format_exit})
    result = fn(t)
    try:
        rows = list(result)
        if len(rows) != N_BALLS:
            sys.exit({format_exit})
        flat = []
        for row in rows:
            x, y = row
            x, y = float(x), float(y)
            if not (math.isfinite(x) and math.isfinite(y)):
                sys.exit({format_exit})
            flat.append(x)
            flat.append(y)
    except (TypeError, ValueError):
        sys.exit({format_exit})
    lines.append(" ".join("0.00" if v == 0 else format(v, ".2f") for v in flat))

sys.stdout.write("\\n".join(lines) + "\\n")
'''


@dataclass(frozen=True)
class ExecPolicy:
    # Command template for the guest interpreter; "{script}" is replaced by
    # the harness path. Defaults to the running interpreter.
    guest_command: tuple[str, ...] = ()
    wall_timeout: float = 10.0
    memory_cap: int = 512 * 1024 * 1024
    # The prompt contract allows `math` only; recorded as policy, enforced at
    # the process boundary (guards + rlimits), not by import filtering.
    allowed_imports: tuple[str, ...] = ("math",)

    def __post_init__(self) -> None:
        if self.wall_timeout <= 0:
            raise ValueError("wall_timeout must be positive")

    def command(self, script: str) -> list[str]:
        template = self.guest_command or (sys.executable, "{script}")
        return [part.replace("{script}", script) for part in template]

    @classmethod
    def from_command_string(cls, command: str, **kwargs) -> "ExecPolicy":
        return cls(guest_command=tuple(shlex.split(command)), **kwargs)


@dataclass(frozen=True)
class CandidateResult:
    # positions[i][b] = (x, y) of ball b at timestamp i; None on failure.
    positions: tuple[tuple[tuple[float, float], ...], ...] | None
    failure: str | None = None  # Timeout | Crash | FormatError | ForbiddenBehavior
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.failure is None


def execute_candidate(source: str, entry: DatasetEntry, policy: ExecPolicy = ExecPolicy()) -> CandidateResult:
    """Run candidate source against an entry's timestamps in a child process."""
    if not entry.timestamps:
        raise ValueError("entry has no timestamps")
    harness = _HARNESS_TEMPLATE.format(
        memory_cap=policy.memory_cap,
        forbidden_exit=_FORBIDDEN_EXIT,
        format_exit=_FORMAT_EXIT,
        source=source,
        timestamps=list(entry.timestamps),
        n_balls=entry.n_balls,
    )
    with tempfile.TemporaryDirectory(prefix="deltaforge-run-") as workdir:
        script = Path(workdir) / "harness.py"
        script.write_text(harness, encoding="utf-8")
        try:
            proc = subprocess.run(
                policy.command(str(script)),
                cwd=workdir,
                capture_output=True,
                text=True,
                timeout=policy.wall_timeout,
            )
        except subprocess.TimeoutExpired:
            return CandidateResult(None, "Timeout", f"exceeded {policy.wall_timeout}s")
    if proc.returncode == _FORBIDDEN_EXIT:
        return CandidateResult(None, "ForbiddenBehavior", "filesystem write or socket use")
    if proc.returncode == _FORMAT_EXIT:
        return CandidateResult(None, "FormatError", "bad predict_position output shape")
    if proc.returncode != 0:
        tail = proc.stderr.strip().splitlines()[-1] if proc.stderr.strip() else ""
        return CandidateResult(None, "Crash", f"exit {proc.returncode}: {tail}"[:300])

    rows = [line for line in proc.stdout.splitlines() if line.strip()]
    if len(rows) != len(entry.timestamps):
        return CandidateResult(None, "FormatError",
                               f"expected {len(entry.timestamps)} lines, got {len(rows)}")
    parsed = []
    for line in rows:
        try:
            values = [float(tok) for tok in line.split()]
        except ValueError:
            return CandidateResult(None, "FormatError", f"unparseable line: {line[:80]}")
        if len(values) != 2 * entry.n_balls:
            return CandidateResult(None, "FormatError", f"bad arity: {line[:80]}")
        parsed.append(tuple((values[2 * b], values[2 * b + 1]) for b in range(entry.n_balls)))
    return CandidateResult(tuple(parsed))


def score_candidate(result: CandidateResult, entry: DatasetEntry) -> Score:
    """One test per timestamp: it passes iff every ball's predicted position
    lies within the entry tolerance (Euclidean) of the oracle value."""
    n = len(entry.tests)
    if not result.ok:
        return zero_score(n, Failure(None, "a successful execution",
                                     f"{result.failure}: {result.detail}"))
    passed = 0
    failures = []
    for i, test in enumerate(entry.tests):
        expected = test["positions"]
        predicted = result.positions[i]
        worst = max(
            math.hypot(px - ex, py - ey)
            for (px, py), (ex, ey) in zip(predicted, expected)
        )
        if worst <= entry.tolerance:
            passed += 1
        else:
            failures.append(Failure(
                input=f"t={test['t']}",
                expected=f"positions {expected}",
                observed=f"positions {[list(p) for p in predicted]} (off by {worst:.1f})",
            ))
    return Score(n_tests=n, n_passed=passed, failures=tuple(failures))


def score_source(source: str, entry: DatasetEntry, policy: ExecPolicy = ExecPolicy()) -> Score:
    return score_candidate(execute_candidate(source, entry, policy), entry)


def score_entries(
    sources_and_entries: list[tuple[str, DatasetEntry]],
    policy: ExecPolicy = ExecPolicy(),
    workers: int = 4,
) -> list[Score]:
    """Score many (source, entry) pairs; child processes run concurrently."""
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        return list(pool.map(lambda pair: score_source(pair[0], pair[1], policy),
                             sources_and_entries))
