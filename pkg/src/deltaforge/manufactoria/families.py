"""The 14 templated problem families and their specification oracles.

Families are grouped on a four-tier ladder:

    Basic   APPEND, EXACT, START
    Easy    ENDS, REGEX, HAS, COMPR
    Medium  PREPEND, MUTATE, BIT_OP
    Hard    FDIV, SYMM, MINMAX, ADD

Decision families judge accept/reject; transformation families judge the
final tape. Numeric families read the tape as a binary number, front of the
tape being the most significant bit, with B = 1 and R = 0; outputs use the
canonical minimal encoding (no leading R zeros, value 0 encodes as "R").

All sampling is a pure function of (family, seed): instances carry their
seed and can be regenerated bit for bit.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from typing import Any

ALL_FAMILIES = (
    "APPEND", "EXACT", "START",
    "ENDS", "REGEX", "HAS", "COMPR",
    "PREPEND", "MUTATE", "BIT_OP",
    "FDIV", "SYMM", "MINMAX", "ADD",
)

TIERS = {
    "basic": ("APPEND", "EXACT", "START"),
    "easy": ("ENDS", "REGEX", "HAS", "COMPR"),
    "medium": ("PREPEND", "MUTATE", "BIT_OP"),
    "hard": ("FDIV", "SYMM", "MINMAX", "ADD"),
}

FAMILY_TIER = {fam: tier for tier, fams in TIERS.items() for fam in fams}

TRANSFORM_FAMILIES = frozenset({"APPEND", "PREPEND", "MUTATE", "BIT_OP", "FDIV", "MINMAX", "ADD"})
DECISION_FAMILIES = frozenset(ALL_FAMILIES) - TRANSFORM_FAMILIES

DEFAULT_LENGTH_CAP = 12


class AlphabetError(Exception):
    """Input tape uses colors outside the instance's alphabet."""


class InfeasibleBalance(Exception):
    """No accepting tape exists within the length cap (mis-sampled instance)."""


@dataclass(frozen=True)
class TestCase:
    input: str
    # "accept" / "reject" for decision families, the expected final tape for
    # transformation families.
    expected: str
    kind: str  # "decision" | "transform"

    def to_dict(self) -> dict[str, Any]:
        return {"input": self.input, "expected": self.expected, "kind": self.kind}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "TestCase":
        return cls(input=d["input"], expected=d["expected"], kind=d["kind"])


@dataclass(frozen=True)
class ProblemInstance:
    family: str
    params: dict[str, Any]
    criteria_text: str
    task_kind: str  # "decision" | "transform"
    id: str
    seed: Any
    alphabet: str = "RB"
    length_cap: int = DEFAULT_LENGTH_CAP

    def to_dict(self) -> dict[str, Any]:
        return {
            "family": self.family,
            "params": dict(self.params),
            "criteria_text": self.criteria_text,
            "task_kind": self.task_kind,
            "id": self.id,
            "seed": self.seed,
            "alphabet": self.alphabet,
            "length_cap": self.length_cap,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ProblemInstance":
        return cls(
            family=d["family"],
            params=dict(d["params"]),
            criteria_text=d["criteria_text"],
            task_kind=d["task_kind"],
            id=d["id"],
            seed=d["seed"],
            alphabet=d.get("alphabet", "RB"),
            length_cap=int(d.get("length_cap", DEFAULT_LENGTH_CAP)),
        )


def _rng(*parts: Any) -> random.Random:
    # String seeding hashes via SHA-512 inside random.Random: stable across
    # runs and interpreter versions, unlike hash().
    return random.Random("mfa:" + ":".join(str(p) for p in parts))


def decode_tape(tape: str) -> int:
    """Binary value of a tape, front = most significant bit, B=1 / R=0."""
    value = 0
    for color in tape:
        if color not in "RB":
            raise AlphabetError(f"non-binary color '{color}' in '{tape}'")
        value = value * 2 + (1 if color == "B" else 0)
    return value


def encode_value(value: int) -> str:
    """Canonical minimal tape for a value: no leading zeros, 0 -> 'R'."""
    if value < 0:
        raise ValueError("negative values have no tape encoding")
    if value == 0:
        return "R"
    out = []
    while value:
        out.append("B" if value & 1 else "R")
        value >>= 1
    return "".join(reversed(out))


def _jitter(rng: random.Random, base: int, lo: int, hi: int) -> int:
    """Perturb a numeric knob by a small delta from {±1, ±2, powers of two},
    guarded to stay in [lo, hi]."""
    deltas = [1, -1, 2, -2, 4, -4, 8, -8, 16, -16]
    for _ in range(8):
        candidate = base + rng.choice(deltas)
        if lo <= candidate <= hi:
            return candidate
    return min(hi, max(lo, base))


def _pattern(rng: random.Random, alphabet: str, lo: int, hi: int) -> str:
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(lo, hi)))


_CRITERIA = {
    "APPEND": "Accept any input and append the sequence {pattern} to the end of the tape.",
    "EXACT": "Accept if the tape is exactly {pattern}.",
    "START": "Accept if the tape starts with {pattern}.",
    "ENDS": "Accept if the tape ends with {pattern}.",
    "REGEX": "Accept if the tape matches the regex pattern {pattern} exactly.",
    "HAS": "Accept if the tape contains the substring {pattern} (must be consecutive).",
    "COMPR": "Treat Blue as 1 and Red as 0. Accept if the binary number is greater than or equal to {constant}.",
    "PREPEND": "Put {pattern} at the beginning of the tape.",
    "MUTATE": "Change all {src} to {dst} sequentially.",
    "BIT_OP": "Treat Blue as 1 and Red as 0. Apply bitwise OR with {constant} to the binary number.",
    "FDIV": "Treat Blue as 1 and Red as 0. Apply floor division by {constant} to the binary number.",
    "SYMM": "Accept strings that match the pattern R{{n}}B{{n+{offset}}} for any n >= 1.",
    "MINMAX": "Treat Blue as 1 and Red as 0. Output the maximum of {constant} and input.",
    "ADD": "Treat Blue as 1 and Red as 0. Apply add {constant} to the binary number.",
}


def _criteria_text(family: str, params: dict[str, Any]) -> str:
    if family == "SYMM":
        offset = params["offset"]
        suffix = "B{n}" if offset == 0 else "B{n+%d}" % offset
        return f"Accept strings that match the pattern R{{n}}{suffix} for any n >= 1."
    return _CRITERIA[family].format(**params)


def make_instance(family: str, params: dict[str, Any], seed: Any = 0,
                  alphabet: str | None = None) -> ProblemInstance:
    """Build an instance from explicit parameters (reference and test use)."""
    if family not in ALL_FAMILIES:
        raise ValueError(f"unknown family '{family}'")
    if alphabet is None:
        alphabet = params.get("alphabet", "RB")
    return ProblemInstance(
        family=family,
        params=params,
        criteria_text=_criteria_text(family, params),
        task_kind="transform" if family in TRANSFORM_FAMILIES else "decision",
        id=f"mfa-{family}-{seed}",
        seed=seed,
        alphabet=alphabet,
    )


def sample_instance(family: str, seed: Any) -> ProblemInstance:
    """Draw one family member; deterministic in (family, seed).

    Discrete knobs (patterns, lengths) come from family ranges; numeric
    knobs are anchored at exhibited values and jittered by small deltas,
    with guards keeping the task well-posed and nontrivial.
    """
    if family not in ALL_FAMILIES:
        raise ValueError(f"unknown family '{family}'")
    rng = _rng("inst", family, seed)
    alphabet = "RB"
    params: dict[str, Any]

    if family in ("APPEND", "PREPEND"):
        params = {"pattern": _pattern(rng, "RB", 2, 4)}
    elif family == "EXACT":
        params = {"pattern": _pattern(rng, "RB", 2, 4)}
    elif family in ("START", "ENDS"):
        params = {"pattern": _pattern(rng, "RB", 2, 3)}
    elif family == "HAS":
        if rng.random() < 0.3:
            alphabet = "RBYG"
        params = {"pattern": _pattern(rng, alphabet, 3, 5)}
    elif family == "REGEX":
        atoms = []
        for _ in range(rng.randint(1, 3)):
            body = _pattern(rng, "RB", 1, 3)
            atoms.append(f"({body}){rng.choice('+*?')}")
        params = {"pattern": "".join(atoms)}
    elif family == "COMPR":
        params = {"constant": _jitter(rng, rng.choice([8, 11, 13, 16, 21, 27]), 2, 200)}
    elif family == "MUTATE":
        src = rng.choice(["RB", "BR", "RR", "BB"])
        dst = src
        while dst == src:
            dst = _pattern(rng, "RB", 2, 2)
        params = {"src": src, "dst": dst}
    elif family == "BIT_OP":
        params = {"constant": _jitter(rng, rng.choice([4, 8, 16, 32]), 1, 255)}
    elif family == "FDIV":
        params = {"constant": rng.choice([2, 4, 8])}
    elif family == "SYMM":
        params = {"offset": rng.choice([0, 1, 2])}
    elif family == "MINMAX":
        params = {"constant": _jitter(rng, rng.choice([7, 11, 13, 19]), 2, 200)}
    else:  # ADD
        params = {"constant": _jitter(rng, rng.choice([4, 8, 12, 16]), 1, 255)}

    return ProblemInstance(
        family=family,
        params=params,
        criteria_text=_criteria_text(family, params),
        task_kind="transform" if family in TRANSFORM_FAMILIES else "decision",
        id=f"mfa-{family}-{seed}",
        seed=seed,
        alphabet=alphabet,
    )


def spec_eval(instance: ProblemInstance, tape: str) -> str:
    """Ground-truth semantics: 'accept'/'reject' for decision families, the
    expected final tape for transformation families."""
    for color in tape:
        if color not in instance.alphabet:
            raise AlphabetError(f"color '{color}' outside alphabet '{instance.alphabet}'")
    family = instance.family
    p = instance.params

    if family == "EXACT":
        return "accept" if tape == p["pattern"] else "reject"
    if family == "START":
        return "accept" if tape.startswith(p["pattern"]) else "reject"
    if family == "ENDS":
        return "accept" if tape.endswith(p["pattern"]) else "reject"
    if family == "HAS":
        return "accept" if p["pattern"] in tape else "reject"
    if family == "REGEX":
        return "accept" if re.fullmatch(p["pattern"], tape) else "reject"
    if family == "COMPR":
        return "accept" if decode_tape(tape) >= p["constant"] else "reject"
    if family == "SYMM":
        m = re.fullmatch(r"(R+)(B+)", tape)
        ok = bool(m) and len(m.group(2)) == len(m.group(1)) + p["offset"]
        return "accept" if ok and len(m.group(1)) >= 1 else "reject"

    if family == "APPEND":
        return tape + p["pattern"]
    if family == "PREPEND":
        return p["pattern"] + tape
    if family == "MUTATE":
        # One left-to-right pass over non-overlapping matches; replaced text
        # is never rescanned (str.replace semantics).
        return tape.replace(p["src"], p["dst"])
    if family == "BIT_OP":
        return encode_value(decode_tape(tape) | p["constant"])
    if family == "FDIV":
        return encode_value(decode_tape(tape) // p["constant"])
    if family == "MINMAX":
        return encode_value(max(decode_tape(tape), p["constant"]))
    if family == "ADD":
        return encode_value(decode_tape(tape) + p["constant"])
    raise ValueError(f"unknown family '{family}'")


def _accepting_sampler(instance: ProblemInstance, rng: random.Random) -> str | None:
    """Construct one accepting tape within the length cap, or None."""
    cap = instance.length_cap
    p = instance.params
    family = instance.family
    alpha = instance.alphabet

    if family == "EXACT":
        return p["pattern"] if len(p["pattern"]) <= cap else None
    if family == "START":
        room = cap - len(p["pattern"])
        if room < 0:
            return None
        return p["pattern"] + _pattern(rng, alpha, 0, room)
    if family == "ENDS":
        room = cap - len(p["pattern"])
        if room < 0:
            return None
        return _pattern(rng, alpha, 0, room) + p["pattern"]
    if family == "HAS":
        room = cap - len(p["pattern"])
        if room < 0:
            return None
        pre = _pattern(rng, alpha, 0, room)
        post = _pattern(rng, alpha, 0, room - len(pre))
        return pre + p["pattern"] + post
    if family == "REGEX":
        atoms = re.findall(r"\(([RB]+)\)([+*?])", p["pattern"])
        for _ in range(16):
            out = []
            for body, quant in atoms:
                if quant == "?":
                    reps = rng.randint(0, 1)
                elif quant == "*":
                    reps = rng.randint(0, 3)
                else:
                    reps = rng.randint(1, 3)
                out.append(body * reps)
            tape = "".join(out)
            if len(tape) <= cap:
                return tape
        # Fall back to the minimal expansion.
        minimal = "".join(body for body, quant in atoms if quant == "+")
        return minimal if len(minimal) <= cap else None
    if family == "COMPR":
        hi = (1 << cap) - 1
        if p["constant"] > hi:
            return None
        return encode_value(rng.randint(p["constant"], min(hi, p["constant"] * 4 + 8)))
    if family == "SYMM":
        max_n = (cap - p["offset"]) // 2
        if max_n < 1:
            return None
        n = rng.randint(1, max_n)
        return "R" * n + "B" * (n + p["offset"])
    return None  # transformation families have no acceptance notion


def _minimal_witness(instance: ProblemInstance) -> str | None:
    p = instance.params
    family = instance.family
    cap = instance.length_cap
    witness: str | None
    if family in ("EXACT", "START", "ENDS", "HAS"):
        witness = p["pattern"]
    elif family == "REGEX":
        atoms = re.findall(r"\(([RB]+)\)([+*?])", p["pattern"])
        witness = "".join(body for body, quant in atoms if quant == "+")
    elif family == "COMPR":
        witness = encode_value(p["constant"])
    elif family == "SYMM":
        witness = "R" + "B" * (1 + p["offset"])
    else:
        return None
    return witness if witness is not None and len(witness) <= cap else None


def generate_tests(instance: ProblemInstance, count: int, seed: Any) -> list[TestCase]:
    """Seeded test suite: always contains the empty tape and, when one
    exists, a minimal accepting witness; decision suites carry at least 40%
    accepting and 40% rejecting cases; lengths stratified from 0 up to the
    family length cap.

    Raises InfeasibleBalance when a decision family admits no accepting tape
    within the cap (a mis-sampled instance).
    """
    if count < 4:
        raise ValueError("suite needs at least 4 cases")
    rng = _rng("tests", instance.id, seed)
    cap = instance.length_cap
    kind = instance.task_kind

    def case(tape: str) -> TestCase:
        return TestCase(input=tape, expected=spec_eval(instance, tape), kind=kind)

    def random_tape() -> str:
        # Length drawn first, so lengths are stratified over 0..cap.
        return _pattern(rng, instance.alphabet, 0, cap)

    forced: list[str] = [""]
    witness = _minimal_witness(instance)
    if witness is not None and witness not in forced:
        forced.append(witness)

    if kind == "decision":
        need = math.ceil(0.4 * count)
        accepts = [t for t in forced if spec_eval(instance, t) == "accept"]
        rejects = [t for t in forced if spec_eval(instance, t) == "reject"]
        attempts = 0
        while len(accepts) < need and attempts < 50 * count:
            attempts += 1
            tape = _accepting_sampler(instance, rng)
            if tape is not None and tape not in accepts and spec_eval(instance, tape) == "accept":
                accepts.append(tape)
        if not accepts:
            raise InfeasibleBalance(f"{instance.id}: no accepting tape within cap {cap}")
        while len(accepts) < need:
            # Tiny accepting language (e.g. EXACT): repeat witnesses to keep
            # the 40/40 balance.
            accepts.append(accepts[len(accepts) % max(1, len(set(accepts)))])
        attempts = 0
        while len(rejects) < need and attempts < 50 * count:
            attempts += 1
            tape = random_tape()
            if tape not in rejects and spec_eval(instance, tape) == "reject":
                rejects.append(tape)
        while len(rejects) < need and rejects:
            rejects.append(rejects[0])
        suite = accepts + rejects
        attempts = 0
        while len(suite) < count:
            attempts += 1
            tape = random_tape()
            if tape not in suite or attempts > 20 * count:
                suite.append(tape)
        suite = suite[:count]
        rng.shuffle(suite)
        return [case(t) for t in suite]

    # Transformation: inputs only need coverage, the oracle supplies outputs.
    suite = list(forced)
    seen = set(suite)
    attempts = 0
    while len(suite) < count:
        attempts += 1
        tape = random_tape()
        if tape not in seen or attempts > 20 * count:
            seen.add(tape)
            suite.append(tape)
    return [case(t) for t in suite[:count]]
