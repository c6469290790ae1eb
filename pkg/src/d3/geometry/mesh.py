"""Mesh containers shared by the extruder, compiler, and exporters."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

RGB = tuple[int, int, int]


@dataclass(frozen=True, eq=False)
class Mesh:
    positions: np.ndarray  # (n, 3) float64
    indices: np.ndarray  # (m, 3) int32, CCW seen from outside
    normals: np.ndarray  # (n, 3) float64, unit length

    def __post_init__(self) -> None:
        assert self.positions.shape[1] == 3
        assert self.indices.shape[1] == 3
        assert self.normals.shape == self.positions.shape


@dataclass(frozen=True, eq=False)
class SceneEntry:
    component_id: str
    instance: int
    name: str  # component id, suffixed ".N" when the block places several
    mesh: Mesh
    world_transform: np.ndarray  # (4, 4) float64, rigid x scale
    color: RGB


@dataclass(frozen=True, eq=False)
class MeshSet:
    scene_name: str
    entries: tuple[SceneEntry, ...] = field(default_factory=tuple)


def vertex_normals(positions: np.ndarray, indices: np.ndarray) -> np.ndarray:
    """Area-weighted per-vertex normals (cross products left unnormalized
    per face carry the area weight)."""
    normals = np.zeros_like(positions)
    v0 = positions[indices[:, 0]]
    v1 = positions[indices[:, 1]]
    v2 = positions[indices[:, 2]]
    face = np.cross(v1 - v0, v2 - v0)
    for corner in range(3):
        np.add.at(normals, indices[:, corner], face)
    length = np.linalg.norm(normals, axis=1, keepdims=True)
    safe = np.where(length < 1e-20, 1.0, length)
    normals = normals / safe
    normals[length[:, 0] < 1e-20] = (0.0, 0.0, 1.0)
    return normals


def mesh_volume(mesh: Mesh) -> float:
    """Signed enclosed volume via the divergence theorem.

    Positive when triangles wind CCW seen from outside; exact for any
    closed mesh regardless of where the origin sits.
    """
    v0 = mesh.positions[mesh.indices[:, 0]]
    v1 = mesh.positions[mesh.indices[:, 1]]
    v2 = mesh.positions[mesh.indices[:, 2]]
    return float(np.einsum("ij,ij->i", v0, np.cross(v1, v2)).sum() / 6.0)


def edge_use_counts(mesh: Mesh) -> dict[tuple[int, int], int]:
    """Undirected edge -> incident triangle count (2 everywhere iff closed)."""
    counts: dict[tuple[int, int], int] = {}
    for tri in mesh.indices:
        a, b, c = (int(v) for v in tri)
        for i, j in ((a, b), (b, c), (c, a)):
            key = (i, j) if i < j else (j, i)
            counts[key] = counts.get(key, 0) + 1
    return counts
