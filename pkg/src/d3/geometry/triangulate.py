"""Ear-clipping triangulation for simple polygons (no holes)."""

from __future__ import annotations

import math
from typing import Sequence

from ..errors import GeometryError

Vec2 = tuple[float, float]

_EPS = 1e-12


def _cross(o: Vec2, a: Vec2, b: Vec2) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _point_in_triangle(p: Vec2, a: Vec2, b: Vec2, c: Vec2) -> bool:
    # Boundary counts as inside, which keeps ears conservative.
    d1 = _cross(a, b, p)
    d2 = _cross(b, c, p)
    d3 = _cross(c, a, p)
    has_neg = d1 < -_EPS or d2 < -_EPS or d3 < -_EPS
    has_pos = d1 > _EPS or d2 > _EPS or d3 > _EPS
    return not (has_neg and has_pos)


def triangulate_polygon(outline: Sequence[Vec2]) -> list[tuple[int, int, int]]:
    """Triangulate a simple CCW polygon into index triples.

    Always emits exactly n-2 triangles. Collinear vertices produce
    zero-area triangles rather than failures so the downstream prism stays
    combinatorially watertight.
    """
    n = len(outline)
    if n < 3:
        raise GeometryError(f"cannot triangulate an outline with {n} vertices")
    pts = [(float(x), float(y)) for x, y in outline]
    remaining = list(range(n))
    triangles: list[tuple[int, int, int]] = []

    while len(remaining) > 3:
        m = len(remaining)
        ear = None
        # Pass 1: strictly convex ear containing no other vertex.
        # Pass 2: tolerate collinear corners (degenerate but safe ears).
        for min_cross in (_EPS, -_EPS):
            for k in range(m):
                ia, ib, ic = remaining[k - 1], remaining[k], remaining[(k + 1) % m]
                a, b, c = pts[ia], pts[ib], pts[ic]
                if _cross(a, b, c) <= min_cross:
                    continue
                blocked = False
                for other in remaining:
                    if other in (ia, ib, ic):
                        continue
                    p = pts[other]
                    if p in (a, b, c):
                        continue
                    if _point_in_triangle(p, a, b, c):
                        blocked = True
                        break
                if not blocked:
                    ear = k
                    break
            if ear is not None:
                break
        if ear is None:
            # Numerically stuck (shouldn't happen for simple input): clip the
            # flattest corner so progress — and triangle count — is guaranteed.
            ear = min(
                range(m),
                key=lambda k: abs(
                    _cross(pts[remaining[k - 1]], pts[remaining[k]], pts[remaining[(k + 1) % m]])
                ),
            )
        m = len(remaining)
        triangles.append((remaining[ear - 1], remaining[ear], remaining[(ear + 1) % m]))
        del remaining[ear]

    triangles.append((remaining[0], remaining[1], remaining[2]))
    return triangles
