"""Geometry kernel: outlines, triangulation, extrusion, placement, export."""

from .compile import compile_scene
from .export import export_glb, export_mesh, export_obj
from .extrude import extrude_outline, extrude_profile
from .mesh import Mesh, MeshSet, RGB, SceneEntry, edge_use_counts, mesh_volume, vertex_normals
from .outline import (
    ensure_ccw,
    is_simple_polygon,
    profile_area,
    profile_outline,
    resample_closed,
    shoelace_area,
)
from .placement import (
    child_frame,
    identity,
    place_instances,
    rotation_x,
    rotation_y,
    scaling,
    translation,
)
from .triangulate import triangulate_polygon

__all__ = [
    "compile_scene",
    "export_glb",
    "export_mesh",
    "export_obj",
    "extrude_outline",
    "extrude_profile",
    "Mesh",
    "MeshSet",
    "RGB",
    "SceneEntry",
    "edge_use_counts",
    "mesh_volume",
    "vertex_normals",
    "ensure_ccw",
    "is_simple_polygon",
    "profile_area",
    "profile_outline",
    "resample_closed",
    "shoelace_area",
    "triangulate_polygon",
    "child_frame",
    "identity",
    "place_instances",
    "rotation_x",
    "rotation_y",
    "scaling",
    "translation",
]
