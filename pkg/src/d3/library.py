"""Built-in analogy library: named 2D outlines and color aliases.

These are the shapes a user can invoke by name ("similar to rose petal")
either directly in SDL via `profile: ref "..."` or through analogy lookup.
The outlines are hand-tuned assets, not ground truth; each is a simple
CCW polygon in scene units. Petal and leaf shapes grow from the origin
along +Y so their base sits at the attachment point.
"""

from __future__ import annotations

import math

Vec2 = tuple[float, float]


def _petal(base_half_width: float, bulge: float, sharpness: float, sides: int = 12) -> tuple[Vec2, ...]:
    # Right edge bottom-to-top, then mirrored left edge top-to-bottom: CCW.
    def width(t: float) -> float:
        return base_half_width + bulge * math.sin(math.pi * t) ** sharpness

    right = [(round(width(j / sides), 4), round(j / sides, 4)) for j in range(sides + 1)]
    left = [(-x, y) for x, y in reversed(right)]
    return tuple(right + left)


def _leaf(sides: int = 12) -> tuple[Vec2, ...]:
    def width(t: float) -> float:
        return 0.22 * math.sin(math.pi * t)

    right = [(round(width(j / sides), 4), round(j / sides, 4)) for j in range(1, sides)]
    left = [(-x, y) for x, y in reversed(right)]
    return tuple([(0.0, 0.0)] + right + [(0.0, 1.0)] + left)


def _circle(radius: float = 0.5, segments: int = 32) -> tuple[Vec2, ...]:
    return tuple(
        (round(radius * math.cos(2 * math.pi * k / segments), 4),
         round(radius * math.sin(2 * math.pi * k / segments), 4))
        for k in range(segments)
    )


def _star(outer: float = 0.5, inner: float = 0.2, points: int = 5) -> tuple[Vec2, ...]:
    verts = []
    for k in range(2 * points):
        r = outer if k % 2 == 0 else inner
        theta = math.pi / 2 + math.pi * k / points
        verts.append((round(r * math.cos(theta), 4), round(r * math.sin(theta), 4)))
    return tuple(verts)


SHAPES: dict[str, tuple[Vec2, ...]] = {
    "rose_petal": _petal(0.10, 0.42, 0.7),
    "lotus_petal": _petal(0.05, 0.30, 1.3),
    "leaf": _leaf(),
    "circle": _circle(),
    "rectangle": ((0.5, -0.3), (0.5, 0.3), (-0.5, 0.3), (-0.5, -0.3)),
    "star": _star(),
}

# Color analogies beyond the HTML table; values are #RRGGBB.
COLOR_ALIASES: dict[str, str] = {
    "eggplant": "#614051",
    "eggplant skin": "#614051",
}


def shape_outline(name: str) -> tuple[Vec2, ...] | None:
    return SHAPES.get(name)


def shape_names() -> tuple[str, ...]:
    return tuple(SHAPES)
