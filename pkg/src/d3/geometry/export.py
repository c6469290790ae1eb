"""Mesh export: Wavefront OBJ (ASCII) and glTF 2.0 (GLB container).

Both outputs are byte-stable for a fixed MeshSet: fixed float formatting
in OBJ, sorted-key compact JSON in the GLB chunk.
"""

from __future__ import annotations

import json
import struct

import numpy as np

from .mesh import Mesh, MeshSet

_GLB_MAGIC = 0x46546C67
_CHUNK_JSON = 0x4E4F534A
_CHUNK_BIN = 0x004E4942
_FLOAT = 5126
_UINT32 = 5125
_ARRAY_BUFFER = 34962
_ELEMENT_ARRAY_BUFFER = 34963


def _world_positions(mesh: Mesh, transform: np.ndarray) -> np.ndarray:
    return mesh.positions @ transform[:3, :3].T + transform[:3, 3]


def export_obj(ms: MeshSet) -> bytes:
    """One named object per entry, vertices in world space, global 1-based
    face indices, LF line endings."""
    lines: list[str] = []
    base = 1
    for entry in ms.entries:
        lines.append(f"o {entry.name}")
        world = _world_positions(entry.mesh, entry.world_transform)
        for x, y, z in world:
            lines.append(f"v {x:.6f} {y:.6f} {z:.6f}")
        for a, b, c in entry.mesh.indices:
            lines.append(f"f {base + a} {base + b} {base + c}")
        base += len(world)
    return ("\n".join(lines) + "\n").encode("ascii")


def export_glb(ms: MeshSet) -> bytes:
    """Single-scene, single-buffer GLB: one node per entry holding the
    column-major world matrix, geometry deduplicated across instances."""
    bin_parts: list[bytes] = []
    buffer_views: list[dict] = []
    accessors: list[dict] = []
    meshes: list[dict] = []
    materials: list[dict] = []
    nodes: list[dict] = []
    mesh_index: dict[int, int] = {}  # id(Mesh)/color dedup -> glTF mesh index

    def add_view(data: bytes, target: int) -> int:
        offset = sum(len(p) for p in bin_parts)
        bin_parts.append(data)
        buffer_views.append(
            {"buffer": 0, "byteOffset": offset, "byteLength": len(data), "target": target}
        )
        return len(buffer_views) - 1

    for entry in ms.entries:
        key = id(entry.mesh)
        if key not in mesh_index:
            positions = entry.mesh.positions.astype(np.float32)
            normals = entry.mesh.normals.astype(np.float32)
            indices = entry.mesh.indices.astype(np.uint32).reshape(-1)

            pos_view = add_view(positions.tobytes(), _ARRAY_BUFFER)
            accessors.append(
                {
                    "bufferView": pos_view,
                    "componentType": _FLOAT,
                    "count": len(positions),
                    "type": "VEC3",
                    "min": [float(v) for v in positions.min(axis=0)],
                    "max": [float(v) for v in positions.max(axis=0)],
                }
            )
            pos_acc = len(accessors) - 1

            norm_view = add_view(normals.tobytes(), _ARRAY_BUFFER)
            accessors.append(
                {
                    "bufferView": norm_view,
                    "componentType": _FLOAT,
                    "count": len(normals),
                    "type": "VEC3",
                }
            )
            norm_acc = len(accessors) - 1

            idx_view = add_view(indices.tobytes(), _ELEMENT_ARRAY_BUFFER)
            accessors.append(
                {
                    "bufferView": idx_view,
                    "componentType": _UINT32,
                    "count": len(indices),
                    "type": "SCALAR",
                }
            )
            idx_acc = len(accessors) - 1

            r, g, b = entry.color
            materials.append(
                {
                    "name": entry.component_id,
                    "pbrMetallicRoughness": {
                        "baseColorFactor": [r / 255.0, g / 255.0, b / 255.0, 1.0],
                        "metallicFactor": 0.0,
                        "roughnessFactor": 1.0,
                    },
                }
            )
            meshes.append(
                {
                    "name": entry.component_id,
                    "primitives": [
                        {
                            "attributes": {"POSITION": pos_acc, "NORMAL": norm_acc},
                            "indices": idx_acc,
                            "material": len(materials) - 1,
                        }
                    ],
                }
            )
            mesh_index[key] = len(meshes) - 1

        matrix = [float(v) for v in entry.world_transform.T.reshape(-1)]
        nodes.append({"name": entry.name, "mesh": mesh_index[key], "matrix": matrix})

    binary = b"".join(bin_parts)
    doc = {
        "asset": {"version": "2.0"},
        "scene": 0,
        "scenes": [{"name": ms.scene_name, "nodes": list(range(len(nodes)))}],
        "nodes": nodes,
        "meshes": meshes,
        "materials": materials,
        "accessors": accessors,
        "bufferViews": buffer_views,
        "buffers": [{"byteLength": len(binary)}],
    }

    json_bytes = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")
    json_bytes += b" " * (-len(json_bytes) % 4)
    binary += b"\x00" * (-len(binary) % 4)

    total = 12 + 8 + len(json_bytes) + 8 + len(binary)
    out = struct.pack("<III", _GLB_MAGIC, 2, total)
    out += struct.pack("<II", len(json_bytes), _CHUNK_JSON) + json_bytes
    out += struct.pack("<II", len(binary), _CHUNK_BIN) + binary
    return out


def export_mesh(ms: MeshSet, format: str) -> bytes:
    if format == "obj":
        return export_obj(ms)
    if format == "gltf":
        return export_glb(ms)
    raise ValueError(f"unknown export format {format!r} (expected 'obj' or 'gltf')")
