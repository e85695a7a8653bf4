"""Periodic shuttle construction between two concentric co-rotating n-gons.

With outer/inner circumradii R_o > R_i, apothem gap
Delta = (R_o - R_i)*cos(pi/n), and a ball launched along a side normal at
speed v, the motion is a uniform periodic shuttle iff the box angular
velocity satisfies omega = k * 2*pi*v / (n*(R_o - R_i)*cos(pi/n)) for an
integer k: during each one-way flight of t_fly = Delta/v the polygons rotate
by exactly k*(2*pi/n), so the side geometry recurs at every impact. The
shuttle round trip takes T_bounce = 2*t_fly and the orientation recurs every
T_orient = 2*pi/|omega| = n*Delta/(|k|*v).

The finite ball size is absorbed by building the actual walls with
shrunk/expanded radii so the *ball center* shuttles exactly between the
nominal apothem shells; all stored periods therefore hold for the nominal
(R_o, R_i) as given.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Any

from deltaforge.bounce.physics import Simulator, states_at
from deltaforge.bounce.scene import (
    AngularMotion,
    BallShape,
    BallSpec,
    GravitySpec,
    PolygonSpec,
    Scene,
    SimConfig,
)


class DegenerateGap(Exception):
    """The annular gap leaves no room for the ball to shuttle."""


@dataclass(frozen=True)
class PeriodicSpec:
    sides: int
    r_outer: float
    r_inner: float
    speed: float
    k: int
    delta: float
    t_fly: float
    omega: float
    t_bounce: float
    t_orient: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "sides": self.sides,
            "r_outer": self.r_outer,
            "r_inner": self.r_inner,
            "speed": self.speed,
            "k": self.k,
            "delta": self.delta,
            "t_fly": self.t_fly,
            "omega": self.omega,
            "t_bounce": self.t_bounce,
            "t_orient": self.t_orient,
        }


def periodic_spec(sides: int, r_outer: float, r_inner: float, speed: float, k: int) -> PeriodicSpec:
    """Evaluate the closed forms; pure arithmetic, no scene construction."""
    if sides < 3 or not (r_outer > r_inner > 0) or speed <= 0:
        raise ValueError("need sides >= 3, R_o > R_i > 0, v > 0")
    delta = (r_outer - r_inner) * math.cos(math.pi / sides)
    t_fly = delta / speed
    omega = k * 2.0 * math.pi * speed / (sides * (r_outer - r_inner) * math.cos(math.pi / sides))
    t_orient = math.inf if k == 0 else sides * delta / (abs(k) * speed)
    return PeriodicSpec(
        sides=sides,
        r_outer=r_outer,
        r_inner=r_inner,
        speed=speed,
        k=k,
        delta=delta,
        t_fly=t_fly,
        omega=omega,
        t_bounce=2.0 * t_fly,
        t_orient=t_orient,
    )


def construct_periodic_scene(
    sides: int,
    r_outer: float,
    r_inner: float,
    speed: float,
    k: int,
    seed: Any = 0,
    ball_radius: float = 10.0,
    center: tuple[float, float] = (750.0, 750.0),
) -> tuple[Scene, PeriodicSpec]:
    """Build a co-rotating concentric two-polygon scene with the ball
    launched along an outer side normal (vertex alignment avoided by a tiny
    seeded phase offset)."""
    spec = periodic_spec(sides, r_outer, r_inner, speed, k)
    if spec.delta <= 2.0 * ball_radius:
        raise DegenerateGap(
            f"gap {spec.delta:.3g} m leaves no shuttle room for a ball of radius {ball_radius}"
        )
    cos_n = math.cos(math.pi / sides)
    if ball_radius >= r_inner * cos_n:
        raise DegenerateGap("ball radius exceeds the inner apothem")

    # Effective shrink/expand: actual walls shifted by one ball radius so the
    # ball center shuttles between the nominal apothem shells.
    r_outer_actual = r_outer + ball_radius / cos_n
    r_inner_actual = r_inner - ball_radius / cos_n

    rng = random.Random(f"bounce:periodic:{sides}:{k}:{seed}")
    phase = rng.uniform(0.002, 0.02)
    spin = AngularMotion(base=spec.omega)
    outer = PolygonSpec(sides=sides, radius=r_outer_actual, center=center,
                        rotation=phase, angular=spin, role="outer")
    inner = PolygonSpec(sides=sides, radius=r_inner_actual, center=center,
                        rotation=phase, angular=spin, role="inner")

    # Launch from the midpoint of outer side 0, straight down the inward
    # normal. The side-0 outward normal sits at phase + pi/n.
    normal_angle = phase + math.pi / sides
    ux, uy = math.cos(normal_angle), math.sin(normal_angle)
    start = (center[0] + spec.r_outer * cos_n * ux, center[1] + spec.r_outer * cos_n * uy)
    velocity = (-speed * ux, -speed * uy)
    ball = BallSpec(
        shape=BallShape(kind="regular", sides=max(3, sides), radius=ball_radius),
        position=start,
        velocity=velocity,
    )
    scene = Scene(
        containers=(outer, inner),
        balls=(ball,),
        gravity=GravitySpec(mode="none", vector=(0.0, 0.0)),
        seed=seed,
        metadata={
            "difficulty": "transformative",
            "tier": -1,
            "families": ["ROT_BOX"],
            "periodic": spec.to_dict(),
        },
    )
    return scene, spec


def recurrence_error(
    scene: Scene,
    period: float,
    config: SimConfig | None = None,
    span_periods: int = 2,
    samples_per_period: int = 8,
) -> float:
    """Max position recurrence defect ||pos(t + period) - pos(t)|| over a
    uniform grid spanning span_periods * period."""
    if not math.isfinite(period) or period <= 0:
        raise ValueError("recurrence needs a finite positive period")
    config = config or SimConfig.truth()
    base = [i * period / samples_per_period
            for i in range((span_periods - 1) * samples_per_period + 1)]
    times = base + [t + period for t in base]
    samples = states_at(scene, config, times)
    half = len(base)
    worst = 0.0
    for s0, s1 in zip(samples[:half], samples[half:]):
        for (x0, y0), (x1, y1) in zip(s0.positions, s1.positions):
            worst = max(worst, math.hypot(x0 - x1, y0 - y1))
    return worst


def measure_shuttle_half_period(scene: Scene, t_end: float, config: SimConfig | None = None) -> float:
    """Median spacing between consecutive wall impacts: the observed one-way
    flight time of the shuttle."""
    config = config or SimConfig.truth()
    sim = Simulator(scene, config)
    sim.run_until(t_end)
    times = [e.t for e in sim.events if e.kind == "wall"]
    if len(times) < 3:
        raise ValueError(f"only {len(times)} impacts by t={t_end}; cannot measure a period")
    gaps = sorted(b - a for a, b in zip(times, times[1:]))
    return gaps[len(gaps) // 2]
