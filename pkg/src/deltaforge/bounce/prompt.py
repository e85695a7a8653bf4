"""Prompt rendering for polygon-dynamics prediction tasks.

The static sections (mechanics, constraints, verification contract,
conventions) are fixed text; the scene description, physics, dynamics and
task sections are generated from the scene record so every prompt fully
determines the trajectory.
"""

from __future__ import annotations

import math

from deltaforge.bounce.scene import BallSpec, PolygonSpec, Scene

_HEADER = """## Polygon Dynamics Prediction
In this task, you will implement a single function predict_position(t)
that computes the 2D positions of all balls at an arbitrary future time
t under idealized mechanics. The function parses the scene configuration
(containers, balls, and physics/meta), reconstructs the motions, detects
and handles boundary collisions with finite-size treatment, and returns
a list where each element is the [x, y] position (rounded to 2 decimals)
of a ball at time t. Each evaluation of t must be computed directly from
initial conditions and scene mechanics with no hidden state or
accumulation across calls. Rendering, animation, and explanatory text
are out of scope; prefer closed-form reasoning and avoid coarse time-
stepping except where narrowly required for collision resolution.

### Mechanics (General)
- Kinematics: Use closed-form equations under constant acceleration:
x(t)=x0+vx0*t+0.5*ax*t^2, y(t)=y0+vy0*t+0.5*ay*t^2.
- Collisions: Perfectly elastic. Reflect velocity using v' = v -
2·dot(v, n̂)·n̂, where n̂ is the inward unit normal at the contact.
- Finite size: Use polygon–polygon contact. Derive regular shapes from
('sides','radius','center','rotation'); irregular convex polygon balls
use provided vertices.
- Geometry: Irregular convex polygons (if present) are simple (non self-
intersecting). Ball finite size must be respected in all interactions.
- Units: Positions in meters; time in seconds; angles in radians;
velocities in m/s; accelerations in m/s^2.
- Cartesian Axes: +X is right, +Y is up.

### Constraints
- Implement only predict_position(t); no other entry points will be called.
- No global variables; no variables defined outside the function.
- Do not import external libraries (except math); do not perform I/O; do
not print; do not use randomness.
- Numerical output must be round(value, 2); normalize -0.0 to 0.0.

### Verification and output contract
- Return a list of positions per ball for the provided t: [[x1,y1],[x2,y2],...].
- Each call must be computed independently (no state carry-over between calls).
- You should assume that the ball will hit the wall and bounce back,
which will be verified in test cases.

"""

_CONVENTIONS = """
### Conventions for this scene
- Containers are convex regular polygons (parameters: 'sides', 'radius',
'center'), unless otherwise specified.
- Angle baseline: By default, the initial orientation is 0.000 rad,
pointing to the first vertex along +X (standard Cartesian axes);
positive angles rotate CCW about the container center.
- Polygon vertices (if provided) are CCW and form a simple convex polygon.
- Container 'radius' denotes the circumradius (meters).
- For balls: irregular convex polygons rely on provided vertices (no
radius mentioned); regular polygons may be derived from
'sides/radius/center/rotation'.
- Containers are kinematic (infinite mass, prescribed motion); impacts
do not alter container motion.
"""

_OUTPUT = """
### Output
- Required format: function predict_position(t: float) -> [[x1,y1],
[x2,y2],...]; coordinates as 2-decimal floats
"""


def _fmt(value: float, decimals: int = 2) -> str:
    out = f"{value:.{decimals}f}"
    return out.lstrip("-") if float(out) == 0.0 else out  # normalize -0.00


def _describe_rotation(spec: PolygonSpec) -> str:
    if not spec.angular.varying and spec.angular.base == 0.0:
        return "static (no rotation)"
    if not spec.angular.varying:
        return f"constant angular velocity {spec.angular.base:.3f} rad/s"
    return (
        "time-varying angular velocity ω(t) = "
        f"{spec.angular.base:.3f} + {spec.angular.amplitude:.3f}*sin({spec.angular.frequency:.3f}*t) rad/s"
    )


def _describe_translation(spec: PolygonSpec) -> str | None:
    path = spec.translation
    if not path.moving:
        return None
    cx, cy = spec.center
    if path.kind == "sin1d":
        ux, uy = path.axis
        amp, freq = path.amplitude[0], path.frequency[0]
        return (
            f"center translates along the fixed direction ({ux:.3f}, {uy:.3f}): "
            f"offset(t) = {amp:.2f}*sin({freq:.3f}*t) m along that direction "
            f"from ({_fmt(cx)}, {_fmt(cy)})"
        )
    ax, ay = path.amplitude
    fx, fy = path.frequency
    return (
        "center follows a Lissajous path from "
        f"({_fmt(cx)}, {_fmt(cy)}): x-offset(t) = {ax:.2f}*sin({fx:.3f}*t), "
        f"y-offset(t) = {ay:.2f}*(sin({fy:.3f}*t + {path.phase:.3f}) - sin({path.phase:.3f})) m"
    )


def _container_line(index: int, spec: PolygonSpec) -> str:
    cx, cy = spec.center
    line = (
        f"- Container {index}: regular polygon with {spec.sides} sides, "
        f"radius {spec.radius:.2f}m, center at ({_fmt(cx)}, {_fmt(cy)}); "
        f"initial orientation {spec.rotation:.3f} rad; {_describe_rotation(spec)}"
    )
    if spec.role == "inner":
        line += "; this polygon is an inner boundary: balls stay outside it"
    translation = _describe_translation(spec)
    if translation:
        line += f"; {translation}"
    return line


def _ball_line(index: int, ball: BallSpec) -> str:
    x, y = ball.position
    vx, vy = ball.velocity
    if ball.shape.kind == "regular":
        shape = f"regular polygon ({ball.shape.sides} sides), radius {ball.shape.radius:.1f}m"
    else:
        pts = ", ".join(f"({_fmt(px)}, {_fmt(py)})" for px, py in ball.shape.vertices)
        shape = f"irregular convex polygon with vertices [{pts}]"
    line = (
        f"- Ball {index}: {shape}, initial position ({_fmt(x)}, {_fmt(y)}), "
        f"initial velocity ({_fmt(vx)}, {_fmt(vy)}) m/s"
    )
    if ball.spin.base != 0.0 or ball.spin.varying:
        if ball.spin.varying:
            line += (
                f"; inner rotation ω(t) = {ball.spin.base:.3f} + "
                f"{ball.spin.amplitude:.3f}*sin({ball.spin.frequency:.3f}*t) rad/s"
            )
        else:
            line += f"; inner rotation {ball.spin.base:.3f} rad/s"
    return line


def _physics_line(scene: Scene) -> str:
    g = scene.gravity
    if g.mode == "none":
        return "- no effective gravity (treated as zero)."
    if g.mode == "chaotic":
        return (
            f"- gravity: chaotic; magnitude {g.magnitude:.2f} m/s^2 with heading "
            f"h(t) = {g.heading:.3f} + {g.wobble:.3f}*sin({g.frequency:.3f}*t) rad; "
            "acceleration = magnitude*(cos h(t), sin h(t))."
        )
    gx, gy = g.vector
    mag = math.hypot(gx, gy)
    return f"- gravity: {g.mode}; acceleration ({_fmt(gx)}, {_fmt(gy)}) m/s^2 (magnitude {mag:.2f})."


def _dynamics_lines(scene: Scene) -> list[str]:
    lines = []
    for i, spec in enumerate(scene.containers, start=1):
        if spec.angular.varying:
            lines.append(
                f"- Container {i} angular speed varies sinusoidally as described above; "
                "orientation(t) = initial + base*t + (amplitude/frequency)*(1 - cos(frequency*t))."
            )
        if spec.translation.moving:
            lines.append(f"- Container {i} translates along its path as described above.")
    if scene.gravity.mode == "chaotic":
        lines.append("- Gravity heading varies sinusoidally as described above.")
    if not lines:
        lines.append("- No additional time-varying mechanisms.")
    return lines


def render_scene_prompt(scene: Scene) -> str:
    parts = [_HEADER]
    parts.append("\n### Scene description\n#### Containers\n")
    parts.append("\n".join(_container_line(i, c) for i, c in enumerate(scene.containers, start=1)))
    parts.append("\n\n#### Objects\n")
    parts.append("\n".join(_ball_line(i, b) for i, b in enumerate(scene.balls, start=1)))
    parts.append("\n\n### Physics\n")
    parts.append(_physics_line(scene))
    parts.append("\n\n### Dynamics\n")
    parts.append("\n".join(_dynamics_lines(scene)))
    parts.append("\n" + _CONVENTIONS)
    parts.append(f"""
### Task
- Number of balls: {len(scene.balls)}
- Your should think step by step and write python code.
- The final output should be in the following format:
[Your thinking steps here ...](optional)
```python
[Your Python code here]
```
- Define predict_position(t) returning a list of length n_balls; each
element is [x_i, y_i] (rounded to 2 decimals) for Ball i at time t (seconds)
""")
    parts.append(_OUTPUT)
    return "".join(parts)
