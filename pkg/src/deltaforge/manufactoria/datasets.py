"""JSONL emission for tape-machine problem families.

One JSON object per line: chat-style messages, the instance record, and its
test suite. Emission is byte-deterministic per (family, counts, seed):
per-entry seeds are derived strings, and JSON is dumped with sorted keys.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from deltaforge.manufactoria.families import generate_tests, sample_instance
from deltaforge.manufactoria.prompt import render_prompt

DEFAULT_TESTS_PER_INSTANCE = 20


def build_instance_entry(family: str, seed: Any, tests_per_instance: int = DEFAULT_TESTS_PER_INSTANCE) -> dict:
    instance = sample_instance(family, seed)
    tests = generate_tests(instance, tests_per_instance, seed=instance.seed)
    return {
        "id": instance.id,
        "family": family,
        "difficulty": instance.family,
        "messages": [{"role": "user", "content": render_prompt(instance)}],
        "instance": instance.to_dict(),
        "tests": [t.to_dict() for t in tests],
    }


def _dump_lines(entries: list[dict], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for entry in entries:
            fh.write(json.dumps(entry, sort_keys=True, separators=(",", ":")) + "\n")


def emit_family_split(
    family: str,
    train_count: int,
    test_count: int,
    seed: Any,
    out_dir: str | Path,
    tests_per_instance: int = DEFAULT_TESTS_PER_INSTANCE,
) -> dict[str, Path]:
    """Write train.jsonl / test.jsonl for one family; returns the paths."""
    out = Path(out_dir)
    written: dict[str, Path] = {}
    for split, count in (("train", train_count), ("test", test_count)):
        entries = [
            build_instance_entry(family, f"{seed}:{split}:{i}", tests_per_instance)
            for i in range(count)
        ]
        path = out / f"{split}.jsonl"
        _dump_lines(entries, path)
        written[split] = path
    return written
