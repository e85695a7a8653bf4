"""Seeded scene sampling for the six problem families across five tiers.

Each family isolates one mechanical effect and can be composed with others:

    ROT_OBJ    ball carries inner rotation (spin)
    ROT_BOX    container rotates, optionally with a sinusoidal envelope
    MOV_BOX    container translates along a sin1d or Lissajous path
    GRAVITY    tiny/small/large/tilted gravity
    MULTI_BOX  several non-overlapping containers, ball in the first
    MULTI_OBJ  several balls in one container

The per-(family, tier) knob ranges live in DIFFICULTY_TABLE; the geometry
baseline is a 300 m container diameter scaled by the row's factor inside the
fixed 1500 m x 1500 m workspace. Sampling is rejection-based under the
placement constraints and every candidate must pass the two-integrator
sanity check before it is accepted; the whole draw is deterministic in
(axes, tier, seed).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Any, Iterable

from deltaforge.bounce.physics import SanityReport, first_impact_time, sanity_check
from deltaforge.bounce.scene import (
    AngularMotion,
    BallShape,
    BallSpec,
    GravitySpec,
    PolygonSpec,
    Scene,
    SimConfig,
    TranslationPath,
    WORKSPACE,
)

FAMILIES = ("ROT_OBJ", "ROT_BOX", "MOV_BOX", "GRAVITY", "MULTI_BOX", "MULTI_OBJ")
TIER_NAMES = ("basic", "easy", "medium", "hard", "extreme")

BASE_RADIUS = 150.0  # half of the 300 m baseline container diameter
PLACEMENT_MARGIN = 5.0  # safety margin between ball disc and incircle, m
CONTAINER_GAP = 30.0  # extra center-to-center clearance between boxes, m
SANITY_THRESHOLD = 15.0  # display units
DEFAULT_RETRY_BUDGET = 50


class RetryBudgetExhausted(Exception):
    """Rejection sampling failed to produce a feasible, sane scene."""


@dataclass(frozen=True)
class DifficultyRow:
    container_factor: float
    outer_sides: tuple[int, int]
    speed: tuple[float, float]
    inner_sides: tuple[int, int] | None = None
    ball_radius: float | None = None
    omega: tuple[float, float] | None = None
    omega_tv: bool = False
    amp: tuple[float, float] | None = None
    path_kind: str | None = None  # sin1d | lissajous | lissajous_chaotic
    path_freq: float | None = None
    gravity: str | None = None
    containers: int = 1
    balls: tuple[int, int] = (1, 1)


DIFFICULTY_TABLE: dict[tuple[str, str], DifficultyRow] = {
    # ROT_OBJ: omega is the ball's own spin.
    ("ROT_OBJ", "basic"): DifficultyRow(1.5, (3, 4), (200, 400), inner_sides=(3, 4), ball_radius=40, omega=(0.1, 0.2)),
    ("ROT_OBJ", "easy"): DifficultyRow(1.4, (3, 5), (400, 600), inner_sides=(5, 6), ball_radius=35, omega=(0.2, 0.5)),
    ("ROT_OBJ", "medium"): DifficultyRow(1.3, (3, 6), (600, 800), inner_sides=(6, 7), ball_radius=30, omega=(0.5, 1.0)),
    ("ROT_OBJ", "hard"): DifficultyRow(1.2, (3, 7), (600, 800), inner_sides=(7, 8), ball_radius=30, omega=(1.0, 2.0), omega_tv=True),
    ("ROT_OBJ", "extreme"): DifficultyRow(1.0, (3, 7), (600, 800), inner_sides=(8, 8), ball_radius=30, omega=(2.0, 2.5), omega_tv=True),
    # ROT_BOX: omega is the container's angular velocity.
    ("ROT_BOX", "basic"): DifficultyRow(1.5, (3, 4), (200, 400), inner_sides=(3, 4), omega=(0.1, 0.2)),
    ("ROT_BOX", "easy"): DifficultyRow(1.4, (5, 6), (400, 600), inner_sides=(5, 6), omega=(0.2, 0.5)),
    ("ROT_BOX", "medium"): DifficultyRow(1.3, (6, 7), (600, 800), inner_sides=(6, 7), omega=(0.5, 1.0)),
    ("ROT_BOX", "hard"): DifficultyRow(1.2, (7, 8), (800, 1000), inner_sides=(7, 8), omega=(1.0, 1.5), omega_tv=True),
    ("ROT_BOX", "extreme"): DifficultyRow(0.8, (8, 10), (1000, 1200), inner_sides=(8, 10), omega=(2.0, 3.0), omega_tv=True),
    ("MOV_BOX", "basic"): DifficultyRow(1.5, (3, 4), (200, 400), amp=(0, 10), path_kind="sin1d", path_freq=0.1),
    ("MOV_BOX", "easy"): DifficultyRow(1.4, (5, 6), (400, 600), amp=(20, 40), path_kind="sin1d", path_freq=0.5),
    ("MOV_BOX", "medium"): DifficultyRow(1.3, (6, 7), (600, 800), amp=(40, 60), path_kind="sin1d", path_freq=1.0),
    ("MOV_BOX", "hard"): DifficultyRow(1.2, (7, 8), (800, 1000), amp=(60, 90), path_kind="lissajous"),
    ("MOV_BOX", "extreme"): DifficultyRow(1.0, (8, 10), (1000, 1200), amp=(90, 120), path_kind="lissajous_chaotic"),
    ("GRAVITY", "basic"): DifficultyRow(1.5, (3, 4), (200, 400), gravity="tiny"),
    ("GRAVITY", "easy"): DifficultyRow(1.4, (5, 6), (400, 600), gravity="small"),
    ("GRAVITY", "medium"): DifficultyRow(1.3, (6, 7), (600, 800), gravity="large"),
    ("GRAVITY", "hard"): DifficultyRow(1.2, (7, 8), (800, 1000), gravity="tilted"),
    ("GRAVITY", "extreme"): DifficultyRow(1.0, (8, 10), (1000, 1200), gravity="tilted"),
    ("MULTI_BOX", "basic"): DifficultyRow(1.5, (3, 4), (200, 400), ball_radius=40, containers=2),
    ("MULTI_BOX", "easy"): DifficultyRow(1.4, (5, 6), (400, 600), ball_radius=35, containers=2),
    ("MULTI_BOX", "medium"): DifficultyRow(1.3, (6, 7), (600, 800), ball_radius=30, containers=3),
    ("MULTI_BOX", "hard"): DifficultyRow(1.2, (7, 8), (800, 1000), ball_radius=25, containers=4),
    ("MULTI_BOX", "extreme"): DifficultyRow(1.0, (8, 10), (1000, 1200), ball_radius=20, containers=6),
    ("MULTI_OBJ", "basic"): DifficultyRow(2.5, (3, 6), (200, 400), inner_sides=(3, 6), ball_radius=20, balls=(2, 2)),
    ("MULTI_OBJ", "easy"): DifficultyRow(2.5, (3, 6), (400, 600), ball_radius=20, balls=(3, 3)),
    ("MULTI_OBJ", "medium"): DifficultyRow(2.5, (3, 6), (600, 800), ball_radius=20, balls=(4, 5)),
    ("MULTI_OBJ", "hard"): DifficultyRow(2.5, (3, 6), (800, 1000), ball_radius=20, balls=(5, 6)),
    ("MULTI_OBJ", "extreme"): DifficultyRow(2.5, (3, 6), (1000, 1200), ball_radius=20, balls=(7, 9)),
}


def difficulty_row(family: str, tier: str) -> DifficultyRow:
    try:
        return DIFFICULTY_TABLE[(family, tier)]
    except KeyError:
        raise KeyError(f"no difficulty row for ({family}, {tier})") from None


def tier_index(tier: str) -> int:
    return TIER_NAMES.index(tier)


def _normalize_axes(axes: Iterable[str] | str) -> tuple[str, ...]:
    if isinstance(axes, str):
        axes = [axes]
    ordered = tuple(f for f in FAMILIES if f in set(axes))
    unknown = set(axes) - set(FAMILIES)
    if unknown:
        raise ValueError(f"unknown axes: {sorted(unknown)}")
    if not ordered:
        raise ValueError("axis set must be nonempty")
    return ordered


def _signed(rng: random.Random, lo: float, hi: float) -> float:
    return rng.uniform(lo, hi) * rng.choice((-1.0, 1.0))


def _angular(rng: random.Random, row: DifficultyRow) -> AngularMotion:
    base = _signed(rng, *row.omega)
    if not row.omega_tv:
        return AngularMotion(base=base)
    return AngularMotion(
        base=base,
        amplitude=abs(base) * rng.uniform(0.3, 0.6),
        frequency=rng.uniform(0.5, 1.5),
    )


def _gravity(rng: random.Random, mode: str) -> GravitySpec:
    if mode == "none":
        return GravitySpec(mode="none", vector=(0.0, 0.0))
    if mode in ("tiny", "small", "large"):
        g = {"tiny": 1.0, "small": 5.0, "large": 20.0}[mode]
        return GravitySpec(mode=mode, vector=(0.0, -g))
    if mode == "tilted":
        angle = rng.uniform(0.02, math.pi / 4 - 0.02)
        side = rng.choice((-1.0, 1.0))
        return GravitySpec(mode="tilted", vector=(20.0 * math.sin(angle) * side, -20.0 * math.cos(angle)))
    if mode == "chaotic":
        return GravitySpec(
            mode="chaotic",
            magnitude=20.0,
            heading=rng.uniform(0.0, 2.0 * math.pi),
            wobble=rng.uniform(math.pi / 6, math.pi / 2),
            frequency=rng.uniform(0.5, 2.0),
        )
    raise ValueError(f"unknown gravity mode '{mode}'")


def _translation(rng: random.Random, row: DifficultyRow) -> TranslationPath:
    amp = rng.uniform(*row.amp)
    if row.path_kind == "sin1d":
        angle = rng.uniform(0.0, 2.0 * math.pi)
        return TranslationPath(
            kind="sin1d",
            amplitude=(amp, 0.0),
            frequency=(row.path_freq, 0.0),
            axis=(math.cos(angle), math.sin(angle)),
        )
    chaotic = row.path_kind == "lissajous_chaotic"
    freq_lo, freq_hi = (0.8, 2.0) if chaotic else (0.4, 0.9)
    return TranslationPath(
        kind="lissajous",
        amplitude=(amp, rng.uniform(*row.amp)),
        frequency=(rng.uniform(freq_lo, freq_hi), rng.uniform(freq_lo, freq_hi)),
        phase=rng.uniform(0.0, 2.0 * math.pi),
    )


def _place_containers(rng: random.Random, count: int, radius: float) -> list[tuple[float, float]]:
    if count == 1:
        return [(WORKSPACE[0] / 2.0, WORKSPACE[1] / 2.0)]
    lo = radius + 20.0
    hi_x = WORKSPACE[0] - radius - 20.0
    hi_y = WORKSPACE[1] - radius - 20.0
    for _ in range(400):
        centers = [(rng.uniform(lo, hi_x), rng.uniform(lo, hi_y)) for _ in range(count)]
        ok = all(
            math.hypot(a[0] - b[0], a[1] - b[1]) >= 2 * radius + CONTAINER_GAP
            for i, a in enumerate(centers)
            for b in centers[i + 1:]
        )
        if ok:
            return centers
    raise RetryBudgetExhausted(f"cannot place {count} containers of radius {radius:.0f}")


def _place_balls(
    rng: random.Random,
    count: int,
    container_center: tuple[float, float],
    limit: float,
    ball_radius: float,
) -> list[tuple[float, float]]:
    """Sample centers uniformly in the feasible incircle disc, pairwise
    non-overlapping with margin."""
    if limit <= 0:
        raise RetryBudgetExhausted("ball does not fit in the container incircle")
    for _ in range(400):
        points = []
        for _ in range(count):
            r = limit * math.sqrt(rng.random())
            a = rng.uniform(0.0, 2.0 * math.pi)
            points.append((container_center[0] + r * math.cos(a), container_center[1] + r * math.sin(a)))
        ok = all(
            math.hypot(p[0] - q[0], p[1] - q[1]) >= 2 * ball_radius + PLACEMENT_MARGIN
            for i, p in enumerate(points)
            for q in points[i + 1:]
        )
        if ok:
            return points
    raise RetryBudgetExhausted(f"cannot place {count} balls of radius {ball_radius:.0f}")


def _first_row_with(rows: dict[str, DifficultyRow], attr: str):
    for family in FAMILIES:
        row = rows.get(family)
        if row is not None and getattr(row, attr) is not None:
            return getattr(row, attr)
    return None


def choose_timestamps(scene: Scene, tier: str, seed: Any, count: int = 5) -> list[float]:
    """Evaluation timestamps. Regular scenes get `count` strictly increasing
    times, the earliest after the first wall impact so at least one bounce is
    always exercised. Periodic scenes get a fixed uniform grid spanning two
    orientation periods."""
    periodic = scene.metadata.get("periodic")
    if periodic:
        t_orient = periodic["t_orient"]
        span = 2.0 * (t_orient if math.isfinite(t_orient) else periodic["t_bounce"])
        step = round(span / 8.0, 3)
        return [round(i * step, 3) for i in range(1, 9)]
    rng = random.Random(f"bounce:ts:{tier}:{seed}")
    impact = first_impact_time(scene, SimConfig.baseline(), t_max=12.0)
    if impact is None:
        impact = 2.0  # ballistic fallback; samplers always produce an impact
    start = impact + 0.05
    span = rng.uniform(1.5, 3.0)
    times: set[float] = set()
    while len(times) < count:
        times.add(round(rng.uniform(start, start + span), 3))
    return sorted(times)


def sample_scene(
    axes: Iterable[str] | str,
    tier: str,
    seed: Any,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
) -> Scene:
    """Draw one scene for an axis set at a tier; deterministic in seed.

    Placement runs under the feasibility constraints (incircle minus safety
    margin, pairwise non-overlap, container gaps) and each candidate must
    pass the 15-unit two-integrator sanity check; failures are discarded and
    resampled up to the retry budget.
    """
    axes = _normalize_axes(axes)
    if tier not in TIER_NAMES:
        raise ValueError(f"unknown tier '{tier}'")
    rows = {family: difficulty_row(family, tier) for family in axes}
    rng = random.Random(f"bounce:scene:{','.join(axes)}:{tier}:{seed}")

    geometry = next(rows[f] for f in FAMILIES if f in rows)  # canonical-order owner
    ball_radius = _first_row_with(rows, "ball_radius") or 40.0
    ball_sides_range = _first_row_with(rows, "inner_sides") or (3, 4)

    last_report: SanityReport | None = None
    for attempt in range(retry_budget):
        radius = geometry.container_factor * BASE_RADIUS
        container_count = rows["MULTI_BOX"].containers if "MULTI_BOX" in rows else 1
        sides = [rng.randint(*geometry.outer_sides) for _ in range(container_count)]
        centers = _place_containers(rng, container_count, radius)

        angular = _angular(rng, rows["ROT_BOX"]) if "ROT_BOX" in rows else AngularMotion()
        translation = None
        if "MOV_BOX" in rows:
            translation = _translation(rng, rows["MOV_BOX"])
        containers = []
        for n, c in zip(sides, centers):
            kwargs: dict[str, Any] = {"sides": n, "radius": radius, "center": c, "rotation": 0.0}
            if "ROT_BOX" in rows:
                kwargs["angular"] = _angular(rng, rows["ROT_BOX"]) if len(sides) > 1 else angular
            if translation is not None:
                kwargs["translation"] = _translation(rng, rows["MOV_BOX"]) if len(sides) > 1 else translation
            containers.append(PolygonSpec(**kwargs))

        gravity = _gravity(rng, rows["GRAVITY"].gravity) if "GRAVITY" in rows else GravitySpec()

        ball_count = rng.randint(*rows["MULTI_OBJ"].balls) if "MULTI_OBJ" in rows else 1
        incircle = containers[0].apothem
        limit = incircle - ball_radius - PLACEMENT_MARGIN
        try:
            positions = _place_balls(rng, ball_count, centers[0], limit, ball_radius)
        except RetryBudgetExhausted:
            continue
        balls = []
        for pos in positions:
            speed = rng.uniform(*geometry.speed)
            direction = rng.uniform(0.0, 2.0 * math.pi)
            spin = _angular(rng, rows["ROT_OBJ"]) if "ROT_OBJ" in rows else AngularMotion()
            balls.append(
                BallSpec(
                    shape=BallShape(kind="regular", sides=rng.randint(*ball_sides_range),
                                    radius=ball_radius, rotation=0.0),
                    position=pos,
                    velocity=(speed * math.cos(direction), speed * math.sin(direction)),
                    spin=spin,
                    container=0,
                )
            )

        scene = Scene(
            containers=tuple(containers),
            balls=tuple(balls),
            gravity=gravity,
            seed=seed,
            metadata={
                "difficulty": tier,
                "tier": tier_index(tier),
                "families": list(axes),
            },
        )
        timestamps = choose_timestamps(scene, tier, seed=f"{seed}:{attempt}")
        report = sanity_check(scene, timestamps, SimConfig.baseline(), SimConfig.truth(),
                              threshold=SANITY_THRESHOLD)
        last_report = report
        if report.passed:
            scene.metadata["timestamps"] = timestamps
            scene.metadata["sanity_deviation"] = report.max_deviation
            return scene

    detail = f"; last deviation {last_report.max_deviation:.1f}" if last_report else ""
    raise RetryBudgetExhausted(
        f"no acceptable scene for axes={axes} tier={tier} seed={seed} "
        f"within {retry_budget} retries{detail}"
    )
