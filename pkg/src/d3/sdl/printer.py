"""Canonical SDL printing.

One canonical form per program: fixed field order, two-space indents, one
field per line, floats via repr() so values round-trip exactly, uppercase
hex colors, uniform scale collapsed to a single number and identity scale
omitted, zero attach offset omitted, trailing newline.
"""

from __future__ import annotations

from .colors import format_hex
from .model import (
    AttachConstraint,
    BezierProfile,
    ComponentBlock,
    EllipseProfile,
    PolygonProfile,
    Profile2D,
    RectProfile,
    RefProfile,
    SceneProgram,
)


def fmt_num(value: float) -> str:
    return repr(float(value))


def _fmt_pairs(pairs: tuple[tuple[float, float], ...]) -> str:
    return " ".join(f"{fmt_num(x)} {fmt_num(y)}" for x, y in pairs)


def _fmt_profile(profile: Profile2D) -> str:
    if isinstance(profile, RectProfile):
        return f"rect {fmt_num(profile.width)} {fmt_num(profile.height)}"
    if isinstance(profile, EllipseProfile):
        return f"ellipse {fmt_num(profile.rx)} {fmt_num(profile.ry)} {profile.segments}"
    if isinstance(profile, PolygonProfile):
        return f"polygon {_fmt_pairs(profile.vertices)}"
    if isinstance(profile, BezierProfile):
        return f"bezier {_fmt_pairs(profile.controls)} samples {profile.samples}"
    if isinstance(profile, RefProfile):
        return f'ref "{profile.name}"'
    raise TypeError(f"unknown profile type {type(profile).__name__}")


def _fmt_attach(attach: AttachConstraint) -> str:
    text = f'"{attach.parent_id}" angle {fmt_num(attach.angle_deg)} {attach.mode}'
    if attach.offset != (0.0, 0.0, 0.0):
        ox, oy, oz = attach.offset
        text += f" offset {fmt_num(ox)} {fmt_num(oy)} {fmt_num(oz)}"
    return text


def print_block(block: ComponentBlock, indent: int = 0) -> str:
    """Render one component block in canonical form (no trailing newline)."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    lines = [f'{pad}component "{block.id}" {{']
    lines.append(f"{inner}profile: {_fmt_profile(block.profile)}")
    lines.append(f"{inner}extrude: {fmt_num(block.extrude)}")
    lines.append(f"{inner}color: {format_hex(block.color)}")
    lines.append(f"{inner}count: {block.count}")
    if block.scale != (1.0, 1.0, 1.0):
        sx, sy, sz = block.scale
        if sx == sy == sz:
            lines.append(f"{inner}scale: {fmt_num(sx)}")
        else:
            lines.append(f"{inner}scale: {fmt_num(sx)} {fmt_num(sy)} {fmt_num(sz)}")
    if block.attach is not None:
        lines.append(f"{inner}attach: {_fmt_attach(block.attach)}")
    lines.append(f"{pad}}}")
    return "\n".join(lines)


def print_program(program: SceneProgram) -> str:
    """Render a program in canonical form, trailing newline included."""
    lines = [f'scene "{program.name}" {{']
    for block in program.components:
        lines.append(print_block(block, indent=1))
    lines.append("}")
    return "\n".join(lines) + "\n"
