"""Instance placement under attachment constraints.

Conventions: every component's local up-axis is +Y and its profile lies in
the local XY plane (extruded along +Z). An attached instance is tilted
about local X by the opening angle (0 = folded against the parent's up
axis, 90 = splayed flat), pushed out by the offset, and — in radial mode —
the whole arrangement is spun about the parent's up-axis in even steps of
360/count starting at azimuth 0. Children chain from the first instance's
frame, before scale, so sibling counts never multiply.
"""

from __future__ import annotations

import math

import numpy as np

from ..sdl.model import ComponentBlock

Mat4 = np.ndarray


def identity() -> Mat4:
    return np.eye(4, dtype=np.float64)


def translation(x: float, y: float, z: float) -> Mat4:
    m = identity()
    m[:3, 3] = (x, y, z)
    return m


def scaling(sx: float, sy: float, sz: float) -> Mat4:
    m = identity()
    m[0, 0] = sx
    m[1, 1] = sy
    m[2, 2] = sz
    return m


def rotation_x(deg: float) -> Mat4:
    rad = math.radians(deg)
    c, s = math.cos(rad), math.sin(rad)
    m = identity()
    m[1, 1] = c
    m[1, 2] = -s
    m[2, 1] = s
    m[2, 2] = c
    return m


def rotation_y(deg: float) -> Mat4:
    rad = math.radians(deg)
    c, s = math.cos(rad), math.sin(rad)
    m = identity()
    m[0, 0] = c
    m[0, 2] = s
    m[2, 0] = -s
    m[2, 2] = c
    return m


def _attach_local(block: ComponentBlock, azimuth_deg: float) -> Mat4:
    attach = block.attach
    assert attach is not None
    tilt = rotation_x(attach.angle_deg)
    offset = translation(*attach.offset)
    if attach.mode == "radial":
        return rotation_y(azimuth_deg) @ offset @ tilt
    return offset @ tilt


def place_instances(block: ComponentBlock, parent_frame: Mat4) -> list[Mat4]:
    """Rigid world transforms for every instance of the block (no scale)."""
    if block.attach is None:
        return [parent_frame.copy() for _ in range(block.count)]
    out = []
    for i in range(block.count):
        azimuth = 360.0 * i / block.count if block.attach.mode == "radial" else 0.0
        out.append(parent_frame @ _attach_local(block, azimuth))
    return out


def child_frame(block: ComponentBlock, parent_frame: Mat4) -> Mat4:
    """Frame the block's children attach to: first instance, unscaled."""
    if block.attach is None:
        return parent_frame.copy()
    return parent_frame @ _attach_local(block, 0.0)
