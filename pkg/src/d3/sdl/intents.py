"""Structured edit operations over scene programs.

Every operation is validated by round-tripping the candidate through the
canonical printer and the parser, so an applied intent can never produce a
program the parser would reject. Failures raise IntentError and leave the
input untouched (programs are immutable anyway).
"""

from __future__ import annotations

from dataclasses import replace
from typing import Sequence

from ..errors import IntentError
from .colors import resolve_color
from .model import (
    SET_PARAM_FIELDS,
    AddComponent,
    AttachConstraint,
    ComponentBlock,
    IntentOp,
    RemoveComponent,
    ReplaceBlock,
    SceneProgram,
    Segment,
    SetParam,
)
from .parser import parse_block_text, parse_program
from .printer import print_program

BOOTSTRAP_SCENE_NAME = "model"


def _parse_block_or_raise(text: str, what: str) -> ComponentBlock:
    block, diags = parse_block_text(text)
    if block is None:
        msgs = "; ".join(str(d) for d in diags)
        raise IntentError(f"{what} does not parse: {msgs}")
    return block


def _require(program: SceneProgram, component_id: str) -> ComponentBlock:
    block = program.component(component_id)
    if block is None:
        raise IntentError(f"unknown component '{component_id}'")
    return block


def _as_vec3(value: object, what: str) -> tuple[float, float, float]:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return (float(value), float(value), float(value))
    if isinstance(value, Sequence) and not isinstance(value, str) and len(value) == 3:
        try:
            x, y, z = (float(v) for v in value)
        except (TypeError, ValueError):
            raise IntentError(f"{what} must be numeric") from None
        return (x, y, z)
    raise IntentError(f"{what} must be a number or a sequence of 3 numbers")


def _set_param(block: ComponentBlock, field_path: str, value: object) -> ComponentBlock:
    if field_path not in SET_PARAM_FIELDS:
        raise IntentError(
            f"unknown parameter '{field_path}' (expected one of {', '.join(SET_PARAM_FIELDS)})"
        )
    if field_path == "color":
        if isinstance(value, str):
            rgb = resolve_color(value)
        else:
            x, y, z = _as_vec3(value, "color")
            rgb = (int(x), int(y), int(z))
        return replace(block, color=rgb)
    if field_path == "extrude":
        try:
            return replace(block, extrude=float(value))  # type: ignore[arg-type]
        except (TypeError, ValueError):
            raise IntentError(f"extrude must be a number, got {value!r}") from None
    if field_path == "count":
        try:
            number = float(value)  # type: ignore[arg-type]
        except (TypeError, ValueError):
            raise IntentError(f"count must be an integer, got {value!r}") from None
        if number != int(number):
            raise IntentError(f"count must be an integer, got {value!r}")
        return replace(block, count=int(number))
    if field_path == "scale":
        return replace(block, scale=_as_vec3(value, "scale"))
    if block.attach is None:
        raise IntentError(f"component '{block.id}' has no attach clause to modify")
    if field_path == "attach.angle":
        try:
            angle = float(value)  # type: ignore[arg-type]
        except (TypeError, ValueError):
            raise IntentError(f"attach.angle must be a number, got {value!r}") from None
        return replace(block, attach=replace(block.attach, angle_deg=angle))
    if field_path == "attach.offset":
        offset = _as_vec3(value, "attach.offset")
        return replace(block, attach=replace(block.attach, offset=offset))
    raise AssertionError(field_path)


def _validated(name: str, components: Sequence[ComponentBlock]) -> SceneProgram:
    candidate = SceneProgram(name=name, components=tuple(components))
    result = parse_program(print_program(candidate))
    if result.program is None:
        msgs = "; ".join(str(d) for d in result.errors)
        raise IntentError(f"edit produces an invalid program: {msgs}")
    return result.program


def apply_intent(program: SceneProgram | None, op: IntentOp) -> SceneProgram:
    """Apply one edit operation, returning a new validated program.

    `program` may be None only for AddComponent, which then bootstraps a
    fresh single-component scene.
    """
    if program is None:
        if not isinstance(op, AddComponent):
            raise IntentError("no program yet; only adding a component can start one")
        block = _parse_block_or_raise(op.block_text, "new component")
        return _validated(BOOTSTRAP_SCENE_NAME, (block,))

    if isinstance(op, AddComponent):
        block = _parse_block_or_raise(op.block_text, "new component")
        if program.component(block.id) is not None:
            raise IntentError(f"component id '{block.id}' already exists")
        return _validated(program.name, (*program.components, block))

    if isinstance(op, ReplaceBlock):
        _require(program, op.component_id)
        block = _parse_block_or_raise(op.block_text, "replacement block")
        components = tuple(
            block if c.id == op.component_id else c for c in program.components
        )
        return _validated(program.name, components)

    if isinstance(op, RemoveComponent):
        target = _require(program, op.component_id)
        if target.attach is None:
            raise IntentError(f"cannot remove the root component '{target.id}'")
        doomed = program.descendant_ids(op.component_id) | {op.component_id}
        components = tuple(c for c in program.components if c.id not in doomed)
        return _validated(program.name, components)

    if isinstance(op, SetParam):
        target = _require(program, op.component_id)
        updated = _set_param(target, op.field_path, op.value)
        components = tuple(
            updated if c.id == op.component_id else c for c in program.components
        )
        return _validated(program.name, components)

    if isinstance(op, Segment):
        _require(program, op.component_id)
        if not op.block_texts:
            raise IntentError("segmentation needs at least one replacement block")
        blocks = [
            _parse_block_or_raise(text, f"segment block {i + 1}")
            for i, text in enumerate(op.block_texts)
        ]
        fresh = [b.id for b in blocks]
        if len(set(fresh)) != len(fresh):
            raise IntentError(f"segment blocks repeat an id: {', '.join(fresh)}")
        components: list[ComponentBlock] = []
        for c in program.components:
            if c.id == op.component_id:
                components.extend(blocks)
            else:
                components.append(c)
        return _validated(program.name, components)

    raise IntentError(f"unknown operation {type(op).__name__}")
