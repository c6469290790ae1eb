"""Prism extrusion: 2D profile in the XY plane, swept along +Z."""

from __future__ import annotations

import numpy as np

from ..errors import GeometryError
from ..sdl.model import Profile2D
from .mesh import Mesh, vertex_normals
from .outline import profile_outline
from .triangulate import triangulate_polygon


def extrude_outline(outline: tuple[tuple[float, float], ...], depth: float) -> Mesh:
    """Watertight prism from a simple CCW outline: bottom ring at z=0,
    top ring at z=depth, 2n vertices, caps plus side quads."""
    if depth <= 0:
        raise GeometryError(f"extrude depth must be > 0, got {depth}")
    n = len(outline)
    cap = triangulate_polygon(outline)

    positions = np.zeros((2 * n, 3), dtype=np.float64)
    positions[:n, 0] = [v[0] for v in outline]
    positions[:n, 1] = [v[1] for v in outline]
    positions[n:, :2] = positions[:n, :2]
    positions[n:, 2] = depth

    tris: list[tuple[int, int, int]] = []
    for i, j, k in cap:
        tris.append((i, k, j))  # bottom cap faces -Z
    for i, j, k in cap:
        tris.append((i + n, j + n, k + n))  # top cap faces +Z
    for i in range(n):
        j = (i + 1) % n
        # CCW outline keeps the interior on the left, so these wind outward.
        tris.append((i, j, j + n))
        tris.append((i, j + n, i + n))

    indices = np.array(tris, dtype=np.int32)
    return Mesh(positions=positions, indices=indices, normals=vertex_normals(positions, indices))


def extrude_profile(profile: Profile2D, depth: float) -> Mesh:
    """Sample the profile's outline and extrude it to a closed prism."""
    return extrude_outline(profile_outline(profile), depth)
