"""Regular-polygon geometry helpers.

Conventions: +X right, +Y up, angles in radians, positive = counter-
clockwise. Orientation 0 points the first vertex along +X; 'radius' is the
circumradius. The apothem (center-to-edge distance) of a regular n-gon with
circumradius R is a(R) = R*cos(pi/n).
"""

from __future__ import annotations

import math


class DegenerateShape(Exception):
    """Polygon parameters do not describe a proper convex polygon."""


def apothem(sides: int, radius: float) -> float:
    return radius * math.cos(math.pi / sides)


def regular_polygon(
    sides: int,
    radius: float,
    center: tuple[float, float] = (0.0, 0.0),
    rotation: float = 0.0,
) -> list[tuple[float, float]]:
    """CCW vertices, vertex 0 at angle `rotation` from +X."""
    if sides < 3:
        raise DegenerateShape(f"need at least 3 sides, got {sides}")
    if radius <= 0:
        raise DegenerateShape(f"radius must be positive, got {radius}")
    cx, cy = center
    step = 2.0 * math.pi / sides
    return [
        (cx + radius * math.cos(rotation + i * step), cy + radius * math.sin(rotation + i * step))
        for i in range(sides)
    ]


def face_normals(sides: int) -> list[tuple[float, float]]:
    """Outward unit normals of the base-orientation faces. Face i joins
    vertex i and vertex i+1; its normal sits midway at angle (2i+1)*pi/n."""
    out = []
    for i in range(sides):
        ang = (2 * i + 1) * math.pi / sides
        out.append((math.cos(ang), math.sin(ang)))
    return out


def polygon_circumradius(vertices: list[tuple[float, float]]) -> float:
    """Max distance from the centroid, used as the bounding-disc radius for
    explicit-vertex ball shapes."""
    if len(vertices) < 3:
        raise DegenerateShape("vertex list needs at least 3 points")
    cx = sum(v[0] for v in vertices) / len(vertices)
    cy = sum(v[1] for v in vertices) / len(vertices)
    return max(math.hypot(vx - cx, vy - cy) for vx, vy in vertices)


def signed_distance_regular(px: float, py: float, sides: int, radius: float) -> tuple[float, float, float]:
    """Signed distance from a local-frame point to a base-orientation regular
    polygon boundary: positive outside, negative inside.

    Returns (distance, nx, ny) where (nx, ny) is the unit direction from the
    boundary toward the point (for inside points, the outward normal of the
    nearest face).
    """
    a = apothem(sides, radius)
    worst = -math.inf
    worst_n = (1.0, 0.0)
    inside = True
    for nx, ny in face_normals(sides):
        d = px * nx + py * ny - a
        if d > 0:
            inside = False
        if d > worst:
            worst = d
            worst_n = (nx, ny)
    if inside:
        return worst, worst_n[0], worst_n[1]

    # Outside: true distance needs the nearest boundary point (edge interior
    # or a vertex).
    verts = regular_polygon(sides, radius)
    best = math.inf
    best_n = (1.0, 0.0)
    for i in range(sides):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % sides]
        ex, ey = bx - ax, by - ay
        length_sq = ex * ex + ey * ey
        t = ((px - ax) * ex + (py - ay) * ey) / length_sq
        t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
        qx, qy = ax + t * ex, ay + t * ey
        d = math.hypot(px - qx, py - qy)
        if d < best:
            best = d
            if d > 1e-12:
                best_n = ((px - qx) / d, (py - qy) / d)
    return best, best_n[0], best_n[1]
