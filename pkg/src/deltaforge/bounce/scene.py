"""Scene records: containers, balls, physics, metadata.

A scene is a complete, self-contained description of one simulation setup.
All time-varying behavior (rotation envelopes, translation paths, chaotic
gravity headings) is parameterized in closed form and frozen into the
record, so the physics oracle stays a pure function of (scene, config, t).
The JSON form of a Scene is the normalized interchange format embedded in
dataset entries.

Units: meters, seconds, radians; the workspace is a fixed 1500 m x 1500 m
extent and display units map 1:1 to meters.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

from deltaforge.bounce.geometry import DegenerateShape, apothem, polygon_circumradius

WORKSPACE = (1500.0, 1500.0)

GRAVITY_MAGNITUDES = {"none": 0.0, "tiny": 1.0, "small": 5.0, "large": 20.0}


@dataclass(frozen=True)
class AngularMotion:
    """Rotation rate base + amplitude*sin(frequency*t); amplitude 0 means a
    constant rate. The orientation integral is closed form, so wall poses are
    exact at any query time."""

    base: float = 0.0
    amplitude: float = 0.0
    frequency: float = 0.0

    def __post_init__(self) -> None:
        if self.amplitude != 0.0 and self.frequency <= 0.0:
            raise ValueError("time-varying rotation needs a positive frequency")

    @property
    def varying(self) -> bool:
        return self.amplitude != 0.0

    def rate(self, t: float) -> float:
        if not self.varying:
            return self.base
        return self.base + self.amplitude * math.sin(self.frequency * t)

    def angle(self, t: float) -> float:
        """Integral of rate from 0 to t."""
        if not self.varying:
            return self.base * t
        return self.base * t + (self.amplitude / self.frequency) * (1.0 - math.cos(self.frequency * t))

    def to_dict(self) -> dict[str, Any]:
        return {"base": self.base, "amplitude": self.amplitude, "frequency": self.frequency}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "AngularMotion":
        return cls(base=d.get("base", 0.0), amplitude=d.get("amplitude", 0.0),
                   frequency=d.get("frequency", 0.0))


@dataclass(frozen=True)
class TranslationPath:
    """Container center offset over time; offset(0) is always zero so the
    stored center is the true t=0 position.

    kinds:
      none       fixed center
      sin1d      axis * amplitude_x * sin(frequency_x * t)
      lissajous  (amplitude_x*sin(fx*t), amplitude_y*(sin(fy*t+phase)-sin(phase)))
    """

    kind: str = "none"
    amplitude: tuple[float, float] = (0.0, 0.0)
    frequency: tuple[float, float] = (0.0, 0.0)
    axis: tuple[float, float] = (1.0, 0.0)
    phase: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("none", "sin1d", "lissajous"):
            raise ValueError(f"unknown path kind '{self.kind}'")

    @property
    def moving(self) -> bool:
        return self.kind != "none"

    def offset(self, t: float) -> tuple[float, float]:
        if self.kind == "none":
            return (0.0, 0.0)
        if self.kind == "sin1d":
            s = self.amplitude[0] * math.sin(self.frequency[0] * t)
            return (self.axis[0] * s, self.axis[1] * s)
        ax, ay = self.amplitude
        fx, fy = self.frequency
        return (ax * math.sin(fx * t), ay * (math.sin(fy * t + self.phase) - math.sin(self.phase)))

    def velocity(self, t: float) -> tuple[float, float]:
        if self.kind == "none":
            return (0.0, 0.0)
        if self.kind == "sin1d":
            s = self.amplitude[0] * self.frequency[0] * math.cos(self.frequency[0] * t)
            return (self.axis[0] * s, self.axis[1] * s)
        ax, ay = self.amplitude
        fx, fy = self.frequency
        return (ax * fx * math.cos(fx * t), ay * fy * math.cos(fy * t + self.phase))

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "amplitude": list(self.amplitude),
            "frequency": list(self.frequency),
            "axis": list(self.axis),
            "phase": self.phase,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "TranslationPath":
        return cls(
            kind=d.get("kind", "none"),
            amplitude=tuple(d.get("amplitude", (0.0, 0.0))),
            frequency=tuple(d.get("frequency", (0.0, 0.0))),
            axis=tuple(d.get("axis", (1.0, 0.0))),
            phase=d.get("phase", 0.0),
        )


@dataclass(frozen=True)
class PolygonSpec:
    """A convex regular polygon wall: the outer container balls live inside,
    or an inner obstacle balls must stay outside (role='inner')."""

    sides: int
    radius: float
    center: tuple[float, float]
    rotation: float = 0.0
    angular: AngularMotion = field(default_factory=AngularMotion)
    translation: TranslationPath = field(default_factory=TranslationPath)
    role: str = "outer"

    def __post_init__(self) -> None:
        if self.sides < 3 or self.radius <= 0:
            raise DegenerateShape(f"bad polygon: sides={self.sides} radius={self.radius}")
        if self.role not in ("outer", "inner"):
            raise ValueError(f"unknown role '{self.role}'")

    @property
    def apothem(self) -> float:
        return apothem(self.sides, self.radius)

    def orientation(self, t: float) -> float:
        return self.rotation + self.angular.angle(t)

    def center_at(self, t: float) -> tuple[float, float]:
        ox, oy = self.translation.offset(t)
        return (self.center[0] + ox, self.center[1] + oy)

    def to_dict(self) -> dict[str, Any]:
        return {
            "sides": self.sides,
            "radius": self.radius,
            "center": list(self.center),
            "rotation": self.rotation,
            "angular_velocity": self.angular.to_dict(),
            "translation": self.translation.to_dict(),
            "role": self.role,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "PolygonSpec":
        return cls(
            sides=int(d["sides"]),
            radius=float(d["radius"]),
            center=tuple(d["center"]),
            rotation=float(d.get("rotation", 0.0)),
            angular=AngularMotion.from_dict(d.get("angular_velocity", {})),
            translation=TranslationPath.from_dict(d.get("translation", {})),
            role=d.get("role", "outer"),
        )


@dataclass(frozen=True)
class BallShape:
    """Regular polygon (sides/radius/rotation) or an explicit convex CCW
    vertex list. For collision purposes balls act as discs of their
    circumradius; the polygon outline affects only the reported shape."""

    kind: str = "regular"
    sides: int = 3
    radius: float = 40.0
    rotation: float = 0.0
    vertices: tuple[tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in ("regular", "vertices"):
            raise ValueError(f"unknown shape kind '{self.kind}'")
        if self.kind == "regular" and (self.sides < 3 or self.radius <= 0):
            raise DegenerateShape(f"bad ball: sides={self.sides} radius={self.radius}")
        if self.kind == "vertices" and len(self.vertices) < 3:
            raise DegenerateShape("explicit ball shape needs at least 3 vertices")

    @property
    def circumradius(self) -> float:
        if self.kind == "regular":
            return self.radius
        return polygon_circumradius(list(self.vertices))

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"kind": self.kind}
        if self.kind == "regular":
            d.update({"sides": self.sides, "radius": self.radius, "rotation": self.rotation})
        else:
            d["vertices"] = [list(v) for v in self.vertices]
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "BallShape":
        if d.get("kind", "regular") == "regular":
            return cls(kind="regular", sides=int(d.get("sides", 3)),
                       radius=float(d.get("radius", 40.0)), rotation=float(d.get("rotation", 0.0)))
        return cls(kind="vertices", vertices=tuple(tuple(v) for v in d["vertices"]))


@dataclass(frozen=True)
class BallSpec:
    shape: BallShape
    position: tuple[float, float]
    velocity: tuple[float, float]
    spin: AngularMotion = field(default_factory=AngularMotion)
    container: int = 0  # index of the outer container this ball lives in

    def to_dict(self) -> dict[str, Any]:
        return {
            "shape": self.shape.to_dict(),
            "position": list(self.position),
            "velocity": list(self.velocity),
            "spin": self.spin.to_dict(),
            "container": self.container,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "BallSpec":
        return cls(
            shape=BallShape.from_dict(d["shape"]),
            position=tuple(d["position"]),
            velocity=tuple(d["velocity"]),
            spin=AngularMotion.from_dict(d.get("spin", {})),
            container=int(d.get("container", 0)),
        )


@dataclass(frozen=True)
class GravitySpec:
    """Gravity mode with its resolved acceleration.

    Constant modes store the resolved vector. The chaotic mode stores a
    frozen heading profile heading + wobble*sin(frequency*t) at fixed
    magnitude, sampled at scene generation time.
    """

    mode: str = "none"
    vector: tuple[float, float] = (0.0, 0.0)
    magnitude: float = 0.0
    heading: float = 0.0
    wobble: float = 0.0
    frequency: float = 0.0

    def accel(self, t: float) -> tuple[float, float]:
        if self.mode != "chaotic":
            return self.vector
        h = self.heading + self.wobble * math.sin(self.frequency * t)
        return (self.magnitude * math.cos(h), self.magnitude * math.sin(h))

    @property
    def constant(self) -> bool:
        return self.mode != "chaotic"

    def to_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "vector": list(self.vector),
            "magnitude": self.magnitude,
            "heading": self.heading,
            "wobble": self.wobble,
            "frequency": self.frequency,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "GravitySpec":
        return cls(
            mode=d.get("mode", "none"),
            vector=tuple(d.get("vector", (0.0, 0.0))),
            magnitude=d.get("magnitude", 0.0),
            heading=d.get("heading", 0.0),
            wobble=d.get("wobble", 0.0),
            frequency=d.get("frequency", 0.0),
        )


@dataclass(frozen=True)
class Scene:
    containers: tuple[PolygonSpec, ...]
    balls: tuple[BallSpec, ...]
    gravity: GravitySpec = field(default_factory=GravitySpec)
    workspace: tuple[float, float] = WORKSPACE
    seed: Any = 0
    metadata: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "containers": [c.to_dict() for c in self.containers],
            "balls": [b.to_dict() for b in self.balls],
            "gravity": self.gravity.to_dict(),
            "workspace": list(self.workspace),
            "seed": self.seed,
            "metadata": dict(self.metadata),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Scene":
        return cls(
            containers=tuple(PolygonSpec.from_dict(c) for c in d["containers"]),
            balls=tuple(BallSpec.from_dict(b) for b in d["balls"]),
            gravity=GravitySpec.from_dict(d.get("gravity", {})),
            workspace=tuple(d.get("workspace", WORKSPACE)),
            seed=d.get("seed", 0),
            metadata=dict(d.get("metadata", {})),
        )

    @classmethod
    def from_json(cls, text: str) -> "Scene":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class SimConfig:
    """Fixed-step integration settings. Restitution is pinned at 1.0: the
    collision model is perfectly elastic."""

    dt: float = 1.0 / 240.0
    max_substeps: int = 40  # bisection iterations per contact
    restitution: float = 1.0

    def __post_init__(self) -> None:
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.restitution != 1.0:
            raise ValueError("only the perfectly elastic model (restitution 1.0) is supported")

    @classmethod
    def truth(cls) -> "SimConfig":
        return cls(dt=1.0 / 240.0)

    @classmethod
    def baseline(cls) -> "SimConfig":
        return cls(dt=1.0 / 60.0)

    def to_dict(self) -> dict[str, Any]:
        return {"dt": self.dt, "max_substeps": self.max_substeps, "restitution": self.restitution}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "SimConfig":
        return cls(dt=float(d.get("dt", 1.0 / 240.0)),
                   max_substeps=int(d.get("max_substeps", 40)),
                   restitution=float(d.get("restitution", 1.0)))


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    positions: tuple[tuple[float, float], ...]
    velocities: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if len(self.positions) != len(self.velocities):
            raise ValueError("positions and velocities must align")
