"""Ground-truth physics: closed-form flight plus fixed-step contact resolution.

Between contacts every ball follows the constant-acceleration closed form.
Each fixed step advances a ball and checks clearance against its walls: the
outer container's faces offset inward by the ball circumradius (erosion of a
convex polygon by a disc is exactly the inset half-plane intersection), and
any inner obstacle polygons dilated outward by the same radius. On
penetration the contact time is refined by bisection inside the step, the
velocity is reflected specularly in the wall's rest frame (rotation
contributes an omega x r surface velocity, translation its path derivative),
and integration resumes from the contact. Ball-ball contacts are equal-mass
elastic circle collisions along the center line, with the system stepped to
the first pair contact by whole-state bisection.

Wall poses are evaluated in closed form at arbitrary times, so the step size
only affects how finely contacts are localized, never where the walls are.

Queries run on an absolute step grid: state_at(t) takes full dt steps to the
last grid point before t and one partial step from there, so batched and
single-shot queries at the same t agree bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from deltaforge.bounce.geometry import face_normals, signed_distance_regular
from deltaforge.bounce.scene import PolygonSpec, Scene, SimConfig, TrajectorySample

_SLOP = 1e-9  # contact tolerance in meters
_EPS_T = 1e-12


class NotUnitNormal(Exception):
    """reflect() requires a unit-length contact normal."""


class InfeasibleScene(Exception):
    """Initial state violates containment or overlap invariants."""


class TunnelDetected(Exception):
    """Penetration exceeded one ball radius after refinement: dt too large."""


@dataclass(frozen=True)
class CollisionEvent:
    t: float
    ball: int
    kind: str  # "wall" | "ball"
    speed_before: float
    speed_after: float
    other: int | None = None


@dataclass(frozen=True)
class SanityReport:
    passed: bool
    max_deviation: float
    threshold: float


def free_flight(
    position: tuple[float, float],
    velocity: tuple[float, float],
    accel: tuple[float, float],
    t: float,
) -> tuple[tuple[float, float], tuple[float, float]]:
    """Closed-form constant-acceleration update."""
    if t < 0:
        raise ValueError("time must be non-negative")
    x, y = position
    vx, vy = velocity
    ax, ay = accel
    return (
        (x + vx * t + 0.5 * ax * t * t, y + vy * t + 0.5 * ay * t * t),
        (vx + ax * t, vy + ay * t),
    )


def reflect(
    v: tuple[float, float],
    normal: tuple[float, float],
    wall_velocity: tuple[float, float] = (0.0, 0.0),
) -> tuple[float, float]:
    """Specular reflection about a unit normal, in the wall's rest frame:
    u = v - w, u' = u - 2(u.n)n, returns u' + w. For static walls this is
    v' = v - 2(v.n)n."""
    nx, ny = normal
    if abs(math.hypot(nx, ny) - 1.0) > 1e-9:
        raise NotUnitNormal(f"|normal| = {math.hypot(nx, ny)!r}")
    ux, uy = v[0] - wall_velocity[0], v[1] - wall_velocity[1]
    dot = ux * nx + uy * ny
    return (ux - 2.0 * dot * nx + wall_velocity[0], uy - 2.0 * dot * ny + wall_velocity[1])


class _Wall:
    """One container polygon seen from a specific ball: inset inward for the
    ball's outer container, dilated outward for inner obstacles."""

    __slots__ = ("spec", "ball_radius", "inner", "base_normals", "inset")

    def __init__(self, spec: PolygonSpec, ball_radius: float, inner: bool):
        self.spec = spec
        self.ball_radius = ball_radius
        self.inner = inner
        self.base_normals = face_normals(spec.sides)
        self.inset = spec.apothem - ball_radius  # outer containment limit

    def pose(self, t: float) -> tuple[float, float, float, float]:
        cx, cy = self.spec.center_at(t)
        theta = self.spec.orientation(t)
        return cx, cy, math.cos(theta), math.sin(theta)

    def clearance(self, px: float, py: float, t: float) -> float:
        cx, cy, cos_t, sin_t = self.pose(t)
        rx, ry = px - cx, py - cy
        if not self.inner:
            worst = math.inf
            for bx, by in self.base_normals:
                nx = bx * cos_t - by * sin_t
                ny = bx * sin_t + by * cos_t
                d = self.inset - (rx * nx + ry * ny)
                if d < worst:
                    worst = d
            return worst
        # Inner obstacle: signed distance in the local frame, minus radius.
        lx = rx * cos_t + ry * sin_t
        ly = -rx * sin_t + ry * cos_t
        sd, _, _ = signed_distance_regular(lx, ly, self.spec.sides, self.spec.radius)
        return sd - self.ball_radius

    def contact(self, px: float, py: float, t: float) -> tuple[tuple[float, float], tuple[float, float]]:
        """(free-direction unit normal, wall surface velocity) at the contact
        nearest to the ball center."""
        cx, cy, cos_t, sin_t = self.pose(t)
        rx, ry = px - cx, py - cy
        if not self.inner:
            worst = math.inf
            normal = (1.0, 0.0)
            for bx, by in self.base_normals:
                nx = bx * cos_t - by * sin_t
                ny = bx * sin_t + by * cos_t
                d = self.inset - (rx * nx + ry * ny)
                if d < worst:
                    worst = d
                    normal = (nx, ny)
            # Free region is inward: flip the outward face normal.
            free_n = (-normal[0], -normal[1])
            # Contact point sits on the real face, one radius outward of the
            # ball center along the face normal.
            qx, qy = px + normal[0] * self.ball_radius, py + normal[1] * self.ball_radius
        else:
            lx = rx * cos_t + ry * sin_t
            ly = -rx * sin_t + ry * cos_t
            _, lnx, lny = signed_distance_regular(lx, ly, self.spec.sides, self.spec.radius)
            free_n = (lnx * cos_t - lny * sin_t, lnx * sin_t + lny * cos_t)
            qx, qy = px - free_n[0] * self.ball_radius, py - free_n[1] * self.ball_radius
        wvx, wvy = self.spec.translation.velocity(t)
        omega = self.spec.angular.rate(t)
        if omega != 0.0:
            wvx += -omega * (qy - cy)
            wvy += omega * (qx - cx)
        return free_n, (wvx, wvy)


class Simulator:
    """Deterministic fixed-step simulation of one scene.

    The main line only ever advances by whole dt steps; probe(t) finishes
    the residual interval on a copy, leaving the grid untouched.
    """

    def __init__(self, scene: Scene, config: SimConfig, check_feasibility: bool = True):
        self.scene = scene
        self.config = config
        self.events: list[CollisionEvent] = []
        self._steps = 0
        self._state = [[b.position[0], b.position[1], b.velocity[0], b.velocity[1]]
                       for b in scene.balls]
        self._radii = [b.shape.circumradius for b in scene.balls]
        self._walls: list[list[_Wall]] = []
        for ball in scene.balls:
            walls = []
            outer = scene.containers[ball.container]
            if outer.role != "outer":
                raise InfeasibleScene(f"ball container {ball.container} is not an outer polygon")
            walls.append(_Wall(outer, ball.shape.circumradius, inner=False))
            for spec in scene.containers:
                if spec.role == "inner":
                    walls.append(_Wall(spec, ball.shape.circumradius, inner=True))
            self._walls.append(walls)
        self._multi = len(scene.balls) > 1
        if check_feasibility:
            self._check_initial()

    # -- setup ---------------------------------------------------------------

    def _check_initial(self) -> None:
        for i, s in enumerate(self._state):
            c = self._clearance(i, s[0], s[1], 0.0)
            if c < -_SLOP:
                raise InfeasibleScene(f"ball {i} starts {-c:.3g} m inside a wall")
        for i in range(len(self._state)):
            for j in range(i + 1, len(self._state)):
                si, sj = self._state[i], self._state[j]
                gap = math.hypot(si[0] - sj[0], si[1] - sj[1]) - (self._radii[i] + self._radii[j])
                if gap < -_SLOP:
                    raise InfeasibleScene(f"balls {i} and {j} overlap by {-gap:.3g} m at t=0")

    # -- wall interaction ----------------------------------------------------

    def _clearance(self, ball: int, px: float, py: float, t: float) -> float:
        return min(w.clearance(px, py, t) for w in self._walls[ball])

    def _contact_wall(self, ball: int, px: float, py: float, t: float) -> _Wall:
        return min(self._walls[ball], key=lambda w: w.clearance(px, py, t))

    def _advance_ball(self, s: list[float], ball: int, t0: float, h: float,
                      events: list[CollisionEvent]) -> None:
        """Advance one ball by h seconds from absolute time t0, resolving
        wall contacts. Mutates s = [x, y, vx, vy]."""
        gravity = self.scene.gravity
        remaining = h
        elapsed = 0.0
        radius = self._radii[ball]
        for _ in range(64):
            if remaining <= _EPS_T:
                return
            accel = gravity.accel(t0 + elapsed + 0.5 * remaining)
            (nx_pos, ny_pos), (nvx, nvy) = free_flight((s[0], s[1]), (s[2], s[3]), accel, remaining)
            if self._clearance(ball, nx_pos, ny_pos, t0 + elapsed + remaining) >= -_SLOP:
                s[0], s[1], s[2], s[3] = nx_pos, ny_pos, nvx, nvy
                return
            # Contact inside this interval: bisect for the crossing time;
            # the wall being crossed is read off the penetrating side.
            lo, hi = 0.0, remaining
            for _ in range(self.config.max_substeps):
                mid = 0.5 * (lo + hi)
                (mx, my), _ = free_flight((s[0], s[1]), (s[2], s[3]), accel, mid)
                if self._clearance(ball, mx, my, t0 + elapsed + mid) >= -_SLOP:
                    lo = mid
                else:
                    hi = mid
            (hx, hy), _ = free_flight((s[0], s[1]), (s[2], s[3]), accel, hi)
            wall = self._contact_wall(ball, hx, hy, t0 + elapsed + hi)
            (cx_pos, cy_pos), (cvx, cvy) = free_flight((s[0], s[1]), (s[2], s[3]), accel, lo)
            s[0], s[1], s[2], s[3] = cx_pos, cy_pos, cvx, cvy
            elapsed += lo
            remaining -= lo
            t_now = t0 + elapsed

            clearance = wall.clearance(s[0], s[1], t_now)
            if clearance < -radius:
                raise TunnelDetected(
                    f"ball {ball} penetrated {-clearance:.3g} m at t={t_now:.6g}; reduce dt"
                )
            normal, wall_velocity = wall.contact(s[0], s[1], t_now)
            if clearance < 0.0:
                # Project back onto the boundary along the free direction.
                s[0] += normal[0] * -clearance
                s[1] += normal[1] * -clearance
            rel = (s[2] - wall_velocity[0]) * normal[0] + (s[3] - wall_velocity[1]) * normal[1]
            if rel < 0.0:
                before = math.hypot(s[2], s[3])
                s[2], s[3] = reflect((s[2], s[3]), normal, wall_velocity)
                events.append(CollisionEvent(t_now, ball, "wall",
                                             before, math.hypot(s[2], s[3])))
                continue
            # Numerical graze (wall effectively receding): finish the interval
            # and project out of whatever is violated at the end.
            (ex, ey), (evx, evy) = free_flight((s[0], s[1]), (s[2], s[3]), accel, remaining)
            s[0], s[1], s[2], s[3] = ex, ey, evx, evy
            elapsed += remaining
            remaining = 0.0
            wall = self._contact_wall(ball, s[0], s[1], t0 + elapsed)
            clearance = wall.clearance(s[0], s[1], t0 + elapsed)
            if clearance < -radius:
                raise TunnelDetected(
                    f"ball {ball} penetrated {-clearance:.3g} m at t={t0 + elapsed:.6g}; reduce dt"
                )
            if clearance < 0.0:
                normal, _ = wall.contact(s[0], s[1], t0 + elapsed)
                s[0] += normal[0] * -clearance
                s[1] += normal[1] * -clearance
            return
        final = self._clearance(ball, s[0], s[1], t0 + elapsed)
        if final < -radius:
            raise TunnelDetected(f"ball {ball} stuck {-final:.3g} m deep at t={t0 + elapsed:.6g}")

    # -- ball-ball interaction -------------------------------------------------

    def _worst_overlap(self, state: list[list[float]]) -> tuple[float, tuple[int, int]]:
        worst = -math.inf
        pair = (0, 0)
        n = len(state)
        for i in range(n):
            for j in range(i + 1, n):
                si, sj = state[i], state[j]
                overlap = (self._radii[i] + self._radii[j]) - math.hypot(si[0] - sj[0], si[1] - sj[1])
                if overlap > worst:
                    worst = overlap
                    pair = (i, j)
        return worst, pair

    def _resolve_pair(self, state: list[list[float]], i: int, j: int, t: float,
                      events: list[CollisionEvent]) -> None:
        si, sj = state[i], state[j]
        dx, dy = sj[0] - si[0], sj[1] - si[1]
        dist = math.hypot(dx, dy)
        if dist < 1e-12:
            return
        nx, ny = dx / dist, dy / dist
        # Separate to exact touch, split equally.
        overlap = (self._radii[i] + self._radii[j]) - dist
        if overlap > 0.0:
            si[0] -= nx * overlap * 0.5
            si[1] -= ny * overlap * 0.5
            sj[0] += nx * overlap * 0.5
            sj[1] += ny * overlap * 0.5
        closing = (si[2] - sj[2]) * nx + (si[3] - sj[3]) * ny
        if closing <= 0.0:
            return  # already separating
        before_i = math.hypot(si[2], si[3])
        before_j = math.hypot(sj[2], sj[3])
        # Equal-mass elastic exchange of normal components.
        si[2] -= closing * nx
        si[3] -= closing * ny
        sj[2] += closing * nx
        sj[3] += closing * ny
        events.append(CollisionEvent(t, i, "ball", before_i, math.hypot(si[2], si[3]), other=j))
        events.append(CollisionEvent(t, j, "ball", before_j, math.hypot(sj[2], sj[3]), other=i))

    def _advance_system(self, state: list[list[float]], t0: float, h: float,
                        events: list[CollisionEvent], depth: int = 0) -> None:
        if not self._multi:
            self._advance_ball(state[0], 0, t0, h, events)
            return
        if depth >= 12 or h <= _EPS_T:
            scratch: list[CollisionEvent] = []
            for idx, s in enumerate(state):
                self._advance_ball(s, idx, t0, h, scratch)
            events.extend(scratch)
            overlap, (i, j) = self._worst_overlap(state)
            if overlap > _SLOP:
                self._resolve_pair(state, i, j, t0 + h, events)
            return

        trial = [s[:] for s in state]
        scratch = []
        for idx, s in enumerate(trial):
            self._advance_ball(s, idx, t0, h, scratch)
        overlap, _ = self._worst_overlap(trial)
        if overlap <= _SLOP:
            for s, ts in zip(state, trial):
                s[:] = ts
            events.extend(scratch)
            return

        # A pair makes contact inside this interval: bisect the whole system
        # to the first contact time.
        lo, hi = 0.0, h
        for _ in range(24):
            mid = 0.5 * (lo + hi)
            probe = [s[:] for s in state]
            tmp: list[CollisionEvent] = []
            for idx, s in enumerate(probe):
                self._advance_ball(s, idx, t0, mid, tmp)
            if self._worst_overlap(probe)[0] <= _SLOP:
                lo = mid
            else:
                hi = mid
        for idx, s in enumerate(state):
            self._advance_ball(s, idx, t0, lo, events)
        _, (i, j) = self._worst_overlap(state)
        self._resolve_pair(state, i, j, t0 + lo, events)
        self._advance_system(state, t0 + lo, h - lo, events, depth + 1)

    # -- queries ---------------------------------------------------------------

    @property
    def grid_time(self) -> float:
        return self._steps * self.config.dt

    def _ensure_grid(self, t: float) -> None:
        dt = self.config.dt
        while (self._steps + 1) * dt <= t + _EPS_T:
            self._advance_system(self._state, self._steps * dt, dt, self.events)
            self._steps += 1

    def probe(self, t: float) -> TrajectorySample:
        """State at absolute time t >= any previously probed time."""
        if t < 0:
            raise ValueError("time must be non-negative")
        self._ensure_grid(t)
        remainder = t - self.grid_time
        if remainder <= _EPS_T:
            state = self._state
        else:
            state = [s[:] for s in self._state]
            scratch: list[CollisionEvent] = []
            self._advance_system(state, self.grid_time, remainder, scratch)
        return TrajectorySample(
            t=t,
            positions=tuple((s[0], s[1]) for s in state),
            velocities=tuple((s[2], s[3]) for s in state),
        )

    def run_until(self, t_end: float) -> None:
        self._ensure_grid(t_end)


def simulate(scene: Scene, config: SimConfig, t_end: float) -> list[TrajectorySample]:
    """Samples at every grid point up to t_end, plus t_end itself."""
    if t_end < 0:
        raise ValueError("t_end must be non-negative")
    sim = Simulator(scene, config)
    samples = []
    n_steps = int(math.floor(t_end / config.dt + _EPS_T))
    for k in range(n_steps + 1):
        samples.append(sim.probe(k * config.dt))
    if samples[-1].t < t_end - _EPS_T:
        samples.append(sim.probe(t_end))
    return samples


def states_at(scene: Scene, config: SimConfig, times: list[float]) -> list[TrajectorySample]:
    """States at the requested times (any order), one simulation pass."""
    order = sorted(range(len(times)), key=lambda i: times[i])
    sim = Simulator(scene, config)
    out: list[TrajectorySample | None] = [None] * len(times)
    for idx in order:
        out[idx] = sim.probe(times[idx])
    return out  # type: ignore[return-value]


def state_at(scene: Scene, config: SimConfig, t: float) -> TrajectorySample:
    return states_at(scene, config, [t])[0]


def first_impact_time(scene: Scene, config: SimConfig, t_max: float = 12.0) -> float | None:
    """Time of the first collision event, or None if none occurs by t_max."""
    sim = Simulator(scene, config)
    t = 0.0
    while t < t_max:
        t = min(t + 0.5, t_max)
        sim.run_until(t)
        if sim.events:
            return sim.events[0].t
    return None


def sanity_check(
    scene: Scene,
    timestamps: list[float],
    baseline: SimConfig,
    truth: SimConfig,
    threshold: float = 15.0,
) -> SanityReport:
    """Two-integrator step-size stability check: simulate under both configs
    and require the worst per-ball position deviation at the reference
    timestamps to stay below the threshold (display units)."""
    if baseline.dt <= truth.dt:
        raise ValueError("baseline must be coarser than truth")
    try:
        coarse = states_at(scene, baseline, timestamps)
        fine = states_at(scene, truth, timestamps)
    except (InfeasibleScene, TunnelDetected):
        return SanityReport(passed=False, max_deviation=math.inf, threshold=threshold)
    worst = 0.0
    for sc, sf in zip(coarse, fine):
        for (x0, y0), (x1, y1) in zip(sc.positions, sf.positions):
            worst = max(worst, math.hypot(x0 - x1, y0 - y1))
    return SanityReport(passed=worst < threshold, max_deviation=worst, threshold=threshold)
