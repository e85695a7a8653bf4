"""Seeded scene builders shared by physics tests and the acceptance suite."""

import math
import random

from deltaforge.bounce.scene import BallShape, BallSpec, PolygonSpec, Scene


def seeded_static_scene(seed) -> Scene:
    """Zero-gravity, static-container scene with a randomized launch."""
    rng = random.Random(f"energy:{seed}")
    sides = rng.randint(3, 8)
    radius = rng.uniform(200.0, 350.0)
    speed = rng.uniform(200.0, 400.0)
    direction = rng.uniform(0.0, 2.0 * math.pi)
    limit = radius * math.cos(math.pi / sides) - 40.0 - 5.0
    r = limit * math.sqrt(rng.random())
    a = rng.uniform(0.0, 2.0 * math.pi)
    box = PolygonSpec(sides=sides, radius=radius, center=(750.0, 750.0))
    ball = BallSpec(
        shape=BallShape(kind="regular", sides=3, radius=40.0),
        position=(750.0 + r * math.cos(a), 750.0 + r * math.sin(a)),
        velocity=(speed * math.cos(direction), speed * math.sin(direction)),
    )
    return Scene(containers=(box,), balls=(ball,))
