"""Experience-replay trace store.

Only full-pass traces are stored. The backing store is an append-only JSONL
log keyed by prompt id with an in-memory index, so it survives restarts and
stays trivially auditable. Writes are serialized by a lock; reads take a
snapshot.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from deltaforge.scoring import Score


class NotFullPass(Exception):
    """Only fully passing traces may enter the replay store."""


@dataclass(frozen=True)
class ReplayTrace:
    prompt_id: str
    trace: str
    score: Score
    recorded_at: int  # monotonic insertion counter

    def to_dict(self) -> dict[str, Any]:
        return {
            "prompt_id": self.prompt_id,
            "trace": self.trace,
            "score": self.score.to_dict(),
            "recorded_at": self.recorded_at,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ReplayTrace":
        return cls(
            prompt_id=d["prompt_id"],
            trace=d["trace"],
            score=Score.from_dict(d["score"]),
            recorded_at=int(d["recorded_at"]),
        )


class ReplayStore:
    def __init__(self, path: str | Path):
        self._path = Path(path)
        self._lock = threading.Lock()
        self._by_prompt: dict[str, list[ReplayTrace]] = {}
        self._counter = 0
        if self._path.exists():
            with open(self._path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    trace = ReplayTrace.from_dict(json.loads(line))
                    self._by_prompt.setdefault(trace.prompt_id, []).append(trace)
                    self._counter = max(self._counter, trace.recorded_at + 1)

    def record_success(self, prompt_id: str, trace: str, score: Score) -> int:
        """Append a full-pass trace; returns the stored count for the prompt."""
        if not score.full_pass:
            raise NotFullPass(f"score {score.per_test:.3f} is not a full pass")
        with self._lock:
            record = ReplayTrace(prompt_id, trace, score, self._counter)
            self._counter += 1
            self._path.parent.mkdir(parents=True, exist_ok=True)
            with open(self._path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(record.to_dict(), sort_keys=True) + "\n")
            bucket = self._by_prompt.setdefault(prompt_id, [])
            bucket.append(record)
            return len(bucket)

    def fetch_recent(self, prompt_id: str, k: int = 3) -> list[ReplayTrace]:
        """Up to k most recent traces for a prompt, newest first; unknown
        prompt ids yield an empty list."""
        if k < 1:
            raise ValueError("k must be at least 1")
        with self._lock:
            bucket = list(self._by_prompt.get(prompt_id, ()))
        bucket.sort(key=lambda t: t.recorded_at, reverse=True)
        return bucket[:k]

    def count(self, prompt_id: str) -> int:
        with self._lock:
            return len(self._by_prompt.get(prompt_id, ()))
