import math
import random

import numpy as np
import pytest
from proggen import random_simple_polygon

from d3.errors import GeometryError
from d3.geometry.extrude import extrude_outline, extrude_profile
from d3.geometry.mesh import edge_use_counts, mesh_volume, vertex_normals
from d3.geometry.outline import ensure_ccw, shoelace_area
from d3.geometry.triangulate import triangulate_polygon
from d3.library import shape_outline
from d3.sdl.model import RectProfile


def triangle_area_sum(outline, triangles) -> float:
    total = 0.0
    pts = [tuple(p) for p in outline]
    for i, j, k in triangles:
        (x1, y1), (x2, y2), (x3, y3) = pts[i], pts[j], pts[k]
        total += 0.5 * abs((x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1))
    return total


def assert_valid_triangulation(outline):
    tris = triangulate_polygon(outline)
    assert len(tris) == len(outline) - 2
    # covered area equals the polygon area: no overlap, no gaps
    assert triangle_area_sum(outline, tris) == pytest.approx(abs(shoelace_area(outline)), rel=1e-9)
    return tris


def test_triangulate_convex():
    assert_valid_triangulation([(0, 0), (1, 0), (1, 1), (0, 1)])
    n = 9
    assert_valid_triangulation(
        [(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n)) for k in range(n)]
    )


def test_triangulate_reflex():
    # L-shape: one reflex corner
    assert_valid_triangulation([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])
    # star: alternating reflex corners
    pts = []
    for k in range(10):
        r = 1.0 if k % 2 == 0 else 0.4
        a = 2 * math.pi * k / 10
        pts.append((r * math.cos(a), r * math.sin(a)))
    assert_valid_triangulation(pts)


def test_triangulate_with_collinear_runs():
    # collinear points along the edges must not wedge the ear search
    assert_valid_triangulation([(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (0, 2)])


def test_triangulate_library_shapes():
    for name in ("rose_petal", "lotus_petal", "leaf", "circle", "rectangle", "star"):
        assert_valid_triangulation([tuple(p) for p in shape_outline(name)])


def test_triangulate_random_polygons():
    rng = random.Random(4242)
    for _ in range(120):
        outline = ensure_ccw(list(random_simple_polygon(rng, rng.randint(3, 14))))
        assert_valid_triangulation(outline)


def test_extrude_counts_and_layers():
    mesh = extrude_outline([(0, 0), (1, 0), (1, 1), (0, 1)], 0.5)
    assert mesh.positions.shape == (8, 3)
    assert mesh.indices.shape == (12, 3)  # 2 caps * 2 + 4 sides * 2
    z = mesh.positions[:, 2]
    assert set(np.round(z, 12)) == {0.0, 0.5}


def test_extrude_requires_positive_depth():
    with pytest.raises(GeometryError):
        extrude_outline([(0, 0), (1, 0), (0, 1)], 0.0)
    with pytest.raises(GeometryError):
        extrude_outline([(0, 0), (1, 0), (0, 1)], -0.1)


def test_prism_volume_oracle_box():
    mesh = extrude_outline([(0, 0), (2, 0), (2, 3), (0, 3)], 0.5)
    assert mesh_volume(mesh) == pytest.approx(3.0, abs=1e-12)


def test_prism_volume_matches_area_times_depth():
    # divergence-theorem volume against the shoelace oracle
    rng = random.Random(99)
    for _ in range(200):
        outline = ensure_ccw(list(random_simple_polygon(rng, rng.randint(3, 16))))
        depth = rng.uniform(0.05, 2.0)
        mesh = extrude_outline(outline, depth)
        expected = shoelace_area(outline) * depth
        assert abs(mesh_volume(mesh) - expected) <= 1e-9 * max(1.0, abs(expected))


def test_prism_is_watertight():
    rng = random.Random(7)
    for _ in range(50):
        outline = ensure_ccw(list(random_simple_polygon(rng, rng.randint(3, 12))))
        mesh = extrude_outline(outline, 0.3)
        counts = edge_use_counts(mesh)
        # closed 2-manifold: every undirected edge is shared by exactly two faces
        assert set(counts.values()) == {2}
        # and consistently oriented: each directed edge appears exactly once,
        # which makes the signed volume trustworthy
        assert mesh_volume(mesh) > 0


def test_extrude_profile_dispatch():
    mesh = extrude_profile(RectProfile(2.0, 3.0), 0.5)
    assert mesh_volume(mesh) == pytest.approx(3.0, abs=1e-12)


def test_vertex_normals_unit_length():
    mesh = extrude_outline([(0, 0), (1, 0), (1, 1), (0, 1)], 1.0)
    normals = vertex_normals(mesh.positions, mesh.indices)
    assert normals.shape == mesh.positions.shape
    lengths = np.linalg.norm(normals, axis=1)
    assert np.allclose(lengths, 1.0)
