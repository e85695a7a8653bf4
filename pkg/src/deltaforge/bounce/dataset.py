"""Dataset entries and JSONL split emission.

Every entry carries the rendered prompt, the scene record, the evaluation
timestamps, per-timestamp expected positions computed by the truth-config
oracle (rounded to 2 decimals, -0.0 normalized to 0.0), and the error
tolerance tag (default 50 display units) used by automated checking.

The three split kinds:

    explorative     train one family at basic, test in-distribution plus
                    each higher tier (easy..extreme)
    compositional   train ROT_BOX and ROT_OBJ separately, test the joint
                    axis set at basic
    transformative  train one family at basic, test periodic two-polygon
                    constructions on a fixed uniform timestamp grid

Emission is byte-deterministic per (spec, seed): per-entry seeds are derived
strings and JSON is dumped with sorted keys in index order.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from deltaforge.bounce.families import TIER_NAMES, choose_timestamps, sample_scene
from deltaforge.bounce.periodic import construct_periodic_scene, recurrence_error
from deltaforge.bounce.physics import states_at
from deltaforge.bounce.prompt import render_scene_prompt
from deltaforge.bounce.scene import Scene, SimConfig

DEFAULT_TOLERANCE = 50.0  # display units
PERIOD_TOLERANCE = 1.0  # max recurrence defect for emitted periodic scenes


@dataclass(frozen=True)
class DatasetEntry:
    id: str
    difficulty: int
    messages: tuple[dict[str, str], ...]
    timestamps: tuple[float, ...]
    tests: tuple[dict[str, Any], ...]  # {"t": ..., "positions": [[x, y], ...]}
    tolerance: float
    scene: Scene

    @property
    def n_balls(self) -> int:
        return len(self.scene.balls)

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "difficulty": self.difficulty,
            "messages": [dict(m) for m in self.messages],
            "timestamps": list(self.timestamps),
            "tests": [dict(t) for t in self.tests],
            "tolerance": self.tolerance,
            "scene": self.scene.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "DatasetEntry":
        return cls(
            id=d["id"],
            difficulty=int(d["difficulty"]),
            messages=tuple(d["messages"]),
            timestamps=tuple(d["timestamps"]),
            tests=tuple(d["tests"]),
            tolerance=float(d.get("tolerance", DEFAULT_TOLERANCE)),
            scene=Scene.from_dict(d["scene"]),
        )


def _round_pos(value: float) -> float:
    rounded = round(value, 2)
    return 0.0 if rounded == 0.0 else rounded  # normalizes -0.0


def build_entry(
    scene: Scene,
    timestamps: list[float],
    tolerance: float = DEFAULT_TOLERANCE,
    entry_id: str | None = None,
) -> DatasetEntry:
    """Render the prompt and compute expected positions with the truth config."""
    if not timestamps:
        raise ValueError("an entry needs at least one timestamp")
    samples = states_at(scene, SimConfig.truth(), list(timestamps))
    tests = tuple(
        {"t": t, "positions": [[_round_pos(x), _round_pos(y)] for x, y in sample.positions]}
        for t, sample in zip(timestamps, samples)
    )
    if entry_id is None:
        families = "+".join(scene.metadata.get("families", ["scene"]))
        entry_id = f"bounce-{families}-{scene.metadata.get('difficulty', '?')}-{scene.seed}"
    return DatasetEntry(
        id=entry_id,
        difficulty=int(scene.metadata.get("tier", 0)),
        messages=({"role": "user", "content": render_scene_prompt(scene)},),
        timestamps=tuple(timestamps),
        tests=tests,
        tolerance=tolerance,
        scene=scene,
    )


def oracle_solution_source(entry: DatasetEntry, dt: float | None = None) -> str:
    """The engine's own program-of-record for an entry: a predict_position
    that replays the scene through the installed oracle. Used to self-verify
    emitted datasets end to end through the candidate runner."""
    config = SimConfig.truth() if dt is None else SimConfig(dt=dt)
    scene_json = entry.scene.to_json()
    return (
        "import json\n"
        "from deltaforge.bounce.scene import Scene, SimConfig\n"
        "from deltaforge.bounce.physics import state_at\n"
        f"_SCENE = Scene.from_json({scene_json!r})\n"
        f"_CONFIG = SimConfig(dt={config.dt!r}, max_substeps={config.max_substeps})\n"
        "def predict_position(t):\n"
        "    sample = state_at(_SCENE, _CONFIG, t)\n"
        "    return [[round(x, 2) + 0.0, round(y, 2) + 0.0] for x, y in sample.positions]\n"
    )


def make_entry(axes, tier: str, seed: Any, tolerance: float = DEFAULT_TOLERANCE,
               entry_id: str | None = None) -> DatasetEntry:
    """Sample one accepted scene and build its entry (timestamps reused from
    the sanity gate)."""
    scene = sample_scene(axes, tier, seed)
    return build_entry(scene, scene.metadata["timestamps"], tolerance, entry_id)


def make_periodic_entry(seed: Any, tolerance: float = DEFAULT_TOLERANCE,
                        entry_id: str | None = None) -> DatasetEntry:
    """Sample one verified periodic construction (even-sided container,
    |k| = 1, symmetry-aligned launch) on the fixed periodic timestamp grid."""
    rng = random.Random(f"bounce:periodic-entry:{seed}")
    for attempt in range(20):
        sides = rng.choice((4, 6, 8))
        r_outer = rng.uniform(150.0, 300.0)
        r_inner = r_outer * rng.uniform(0.35, 0.5)
        speed = rng.uniform(100.0, 300.0)
        k = rng.choice((-1, 1))
        scene, spec = construct_periodic_scene(
            sides, r_outer, r_inner, speed, k, seed=f"{seed}:{attempt}"
        )
        defect = recurrence_error(scene, spec.t_orient)
        if defect <= PERIOD_TOLERANCE:
            scene.metadata["recurrence_error"] = defect
            timestamps = choose_timestamps(scene, "basic", seed=f"{seed}:{attempt}")
            return build_entry(scene, timestamps, tolerance, entry_id)
    raise RuntimeError(f"no verified periodic scene for seed {seed}")


def _write_jsonl(entries: list[DatasetEntry], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for entry in entries:
            fh.write(json.dumps(entry.to_dict(), sort_keys=True, separators=(",", ":")) + "\n")
    return path


def emit_scenes(axes, tier: str, count: int, seed: Any, out_path: str | Path,
                tolerance: float = DEFAULT_TOLERANCE, label: str = "gen") -> Path:
    """Write `count` entries for one (axes, tier) to a JSONL file."""
    axes_name = "+".join(axes) if not isinstance(axes, str) else axes
    entries = [
        make_entry(axes, tier, f"{seed}:{label}:{i}",
                   tolerance, entry_id=f"bounce-{axes_name}-{tier}-{label}-{i:05d}")
        for i in range(count)
    ]
    return _write_jsonl(entries, Path(out_path))


def emit_split(
    kind: str,
    axes,
    seed: Any,
    out_dir: str | Path,
    train_count: int = 1000,
    test_count: int = 100,
    tolerance: float = DEFAULT_TOLERANCE,
) -> dict[str, Path]:
    """Emit one generalization split; returns the written paths by name."""
    out = Path(out_dir)
    written: dict[str, Path] = {}
    if kind == "explorative":
        family = axes if isinstance(axes, str) else "+".join(axes)
        written["train"] = emit_scenes(axes, "basic", train_count, seed, out / "train.jsonl",
                                       tolerance, label="train")
        written["test_id"] = emit_scenes(axes, "basic", test_count, seed, out / "test_id.jsonl",
                                         tolerance, label="test_id")
        for tier in TIER_NAMES[1:]:
            written[f"test_ood_{tier}"] = emit_scenes(
                axes, tier, test_count, seed, out / f"test_ood_{tier}.jsonl",
                tolerance, label=f"test_{tier}")
        return written
    if kind == "compositional":
        written["train_rot_box"] = emit_scenes("ROT_BOX", "basic", train_count, seed,
                                               out / "train_rot_box.jsonl", tolerance, "train_rb")
        written["train_rot_obj"] = emit_scenes("ROT_OBJ", "basic", train_count, seed,
                                               out / "train_rot_obj.jsonl", tolerance, "train_ro")
        written["test_joint"] = emit_scenes(("ROT_BOX", "ROT_OBJ"), "basic", test_count, seed,
                                            out / "test_joint.jsonl", tolerance, "test_joint")
        return written
    if kind == "transformative":
        written["train"] = emit_scenes(axes, "basic", train_count, seed, out / "train.jsonl",
                                       tolerance, label="train")
        entries = [
            make_periodic_entry(f"{seed}:periodic:{i}", tolerance,
                                entry_id=f"bounce-periodic-{i:05d}")
            for i in range(test_count)
        ]
        written["test_periodic"] = _write_jsonl(entries, out / "test_periodic.jsonl")
        return written
    raise ValueError(f"unknown split kind '{kind}'")


def load_entries(path: str | Path) -> list[DatasetEntry]:
    entries = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                entries.append(DatasetEntry.from_dict(json.loads(line)))
    return entries
