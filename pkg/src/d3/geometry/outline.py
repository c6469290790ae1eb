"""2D outline sampling and polygon predicates.

All profiles reduce to a closed, simple, counter-clockwise outline before
extrusion. Sampling rules: rect -> its 4 corners, ellipse -> regular
parameter steps, bezier -> the smooth closed quadratic chain through the
control polygon's edge midpoints, ref -> a library asset.
"""

from __future__ import annotations

import math

from .. import library
from ..errors import GeometryError
from ..sdl.model import (
    BezierProfile,
    EllipseProfile,
    PolygonProfile,
    Profile2D,
    RectProfile,
    RefProfile,
    Vec2,
)


def shoelace_area(outline: list[Vec2] | tuple[Vec2, ...]) -> float:
    """Signed area; positive for CCW."""
    total = 0.0
    n = len(outline)
    for i in range(n):
        x0, y0 = outline[i]
        x1, y1 = outline[(i + 1) % n]
        total += x0 * y1 - x1 * y0
    return total / 2.0


def profile_area(outline: list[Vec2] | tuple[Vec2, ...]) -> float:
    """Positive area of a simple closed outline."""
    if len(outline) < 3:
        raise GeometryError("degenerate outline: fewer than 3 vertices")
    return abs(shoelace_area(outline))


def _segments_intersect(p1: Vec2, p2: Vec2, q1: Vec2, q2: Vec2) -> bool:
    # Proper or improper intersection between two closed segments.
    def orient(a: Vec2, b: Vec2, c: Vec2) -> float:
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    def on_segment(a: Vec2, b: Vec2, c: Vec2) -> bool:
        return (
            min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])
        )

    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0:
        return True
    if d1 == 0 and on_segment(q1, q2, p1):
        return True
    if d2 == 0 and on_segment(q1, q2, p2):
        return True
    if d3 == 0 and on_segment(p1, p2, q1):
        return True
    if d4 == 0 and on_segment(p1, p2, q2):
        return True
    return False


def is_simple_polygon(outline: list[Vec2] | tuple[Vec2, ...]) -> bool:
    """True when the closed outline has no repeated vertices and no edge
    crossings apart from shared endpoints of adjacent edges."""
    n = len(outline)
    if n < 3:
        return False
    if len({(x, y) for x, y in outline}) != n:
        return False
    if abs(shoelace_area(outline)) <= 1e-12:
        return False
    for i in range(n):
        p1, p2 = outline[i], outline[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue  # adjacent edges share a vertex by construction
            q1, q2 = outline[j], outline[(j + 1) % n]
            if _segments_intersect(p1, p2, q1, q2):
                return False
    return True


def ensure_ccw(outline: list[Vec2]) -> list[Vec2]:
    if shoelace_area(outline) < 0:
        return list(reversed(outline))
    return outline


def sample_ellipse(rx: float, ry: float, segments: int) -> list[Vec2]:
    return [
        (rx * math.cos(2 * math.pi * k / segments), ry * math.sin(2 * math.pi * k / segments))
        for k in range(segments)
    ]


def sample_bezier_chain(controls: tuple[Vec2, ...] | list[Vec2], samples: int) -> list[Vec2]:
    """Sample the closed smooth curve defined by a control chain.

    Each consecutive control point pair contributes a quadratic arc from one
    edge midpoint to the next, with the shared control point as its handle,
    so the curve is closed and tangent-continuous for any chain.
    """
    k = len(controls)
    mids = [
        ((controls[i][0] + controls[(i + 1) % k][0]) / 2.0,
         (controls[i][1] + controls[(i + 1) % k][1]) / 2.0)
        for i in range(k)
    ]
    per_seg = [samples // k + (1 if i < samples % k else 0) for i in range(k)]
    points: list[Vec2] = []
    for i in range(k):
        a = mids[i]
        c = controls[(i + 1) % k]
        b = mids[(i + 1) % k]
        m = per_seg[i]
        for j in range(m):
            t = j / m
            u = 1.0 - t
            points.append(
                (u * u * a[0] + 2 * u * t * c[0] + t * t * b[0],
                 u * u * a[1] + 2 * u * t * c[1] + t * t * b[1])
            )
    return points


def profile_outline(profile: Profile2D) -> list[Vec2]:
    """Closed, simple, CCW outline for any profile kind."""
    if isinstance(profile, RectProfile):
        w, h = profile.width / 2.0, profile.height / 2.0
        outline: list[Vec2] = [(w, -h), (w, h), (-w, h), (-w, -h)]
    elif isinstance(profile, EllipseProfile):
        outline = sample_ellipse(profile.rx, profile.ry, profile.segments)
    elif isinstance(profile, PolygonProfile):
        outline = list(profile.vertices)
    elif isinstance(profile, BezierProfile):
        outline = sample_bezier_chain(profile.controls, profile.samples)
    elif isinstance(profile, RefProfile):
        asset = library.shape_outline(profile.name)
        if asset is None:
            raise GeometryError(f"unknown profile ref {profile.name!r}")
        outline = list(asset)
    else:
        raise GeometryError(f"unsupported profile {profile!r}")
    outline = ensure_ccw(outline)
    if not is_simple_polygon(outline):
        raise GeometryError("profile outline is self-intersecting or degenerate")
    return outline


def resample_closed(points: list[Vec2], n: int) -> list[Vec2]:
    """Resample a closed polyline to n points evenly spaced by arc length.

    The first output point is the first input point; the closing edge back
    to it is included in the arc length.
    """
    # Drop consecutive duplicates (closing duplicate included).
    cleaned: list[Vec2] = []
    for p in points:
        if not cleaned or p != cleaned[-1]:
            cleaned.append(p)
    if len(cleaned) > 1 and cleaned[0] == cleaned[-1]:
        cleaned.pop()
    if len(cleaned) < 3:
        raise GeometryError("closed path needs at least 3 distinct points")

    m = len(cleaned)
    seg_len = []
    for i in range(m):
        x0, y0 = cleaned[i]
        x1, y1 = cleaned[(i + 1) % m]
        seg_len.append(math.hypot(x1 - x0, y1 - y0))
    total = sum(seg_len)
    if total <= 0:
        raise GeometryError("closed path has zero length")

    out: list[Vec2] = []
    step = total / n
    seg = 0
    acc = 0.0  # arc length consumed before current segment
    for j in range(n):
        target = j * step
        while seg < m - 1 and acc + seg_len[seg] <= target:
            acc += seg_len[seg]
            seg += 1
        t = (target - acc) / seg_len[seg] if seg_len[seg] > 0 else 0.0
        x0, y0 = cleaned[seg]
        x1, y1 = cleaned[(seg + 1) % m]
        out.append((x0 + (x1 - x0) * t, y0 + (y1 - y0) * t))
    return out
