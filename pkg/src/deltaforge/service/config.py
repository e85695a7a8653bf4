"""Service configuration: JSON file, overridable via DELTAFORGE_* env vars."""

from __future__ import annotations

import json
import os
import shlex
from dataclasses import dataclass, replace
from pathlib import Path


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8321
    workers: int = 4  # concurrent candidate executions
    guest_command: tuple[str, ...] = ()  # empty = current interpreter
    wall_timeout: float = 10.0
    memory_cap: int = 512 * 1024 * 1024
    store_path: str = "replay_store.jsonl"
    entry_index_path: str | None = None  # JSONL dataset resolvable by entry_id
    default_test_count: int = 20

    @classmethod
    def load(cls, path: str | Path | None = None, env: dict[str, str] | None = None) -> "ServiceConfig":
        env = os.environ if env is None else env
        config = cls()
        if path is not None:
            with open(path, encoding="utf-8") as fh:
                raw = json.load(fh)
            known = {k: v for k, v in raw.items() if k in cls.__dataclass_fields__}
            if "guest_command" in known and isinstance(known["guest_command"], str):
                known["guest_command"] = tuple(shlex.split(known["guest_command"]))
            elif "guest_command" in known:
                known["guest_command"] = tuple(known["guest_command"])
            config = replace(config, **known)
        overrides: dict = {}
        if "DELTAFORGE_HOST" in env:
            overrides["host"] = env["DELTAFORGE_HOST"]
        if "DELTAFORGE_PORT" in env:
            overrides["port"] = int(env["DELTAFORGE_PORT"])
        if "DELTAFORGE_WORKERS" in env:
            overrides["workers"] = int(env["DELTAFORGE_WORKERS"])
        if "DELTAFORGE_GUEST_COMMAND" in env:
            overrides["guest_command"] = tuple(shlex.split(env["DELTAFORGE_GUEST_COMMAND"]))
        if "DELTAFORGE_WALL_TIMEOUT" in env:
            overrides["wall_timeout"] = float(env["DELTAFORGE_WALL_TIMEOUT"])
        if "DELTAFORGE_MEMORY_CAP" in env:
            overrides["memory_cap"] = int(env["DELTAFORGE_MEMORY_CAP"])
        if "DELTAFORGE_STORE_PATH" in env:
            overrides["store_path"] = env["DELTAFORGE_STORE_PATH"]
        if "DELTAFORGE_ENTRY_INDEX" in env:
            overrides["entry_index_path"] = env["DELTAFORGE_ENTRY_INDEX"]
        return replace(config, **overrides) if overrides else config
