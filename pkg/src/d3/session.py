"""Live modeling session: stage machine, event handling, undo/redo,
save/load.

State is an immutable snapshot; every event handler computes a full
replacement state plus a SceneUpdate, so failures are atomic by
construction — the caller keeps the old state unless the handler returns a
new one. History stores whole program texts (programs are kilobytes).
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Mapping

from .errors import (
    D3Error,
    GeometryError,
    GestureError,
    IntentError,
    ProviderError,
    SessionError,
)
from .geometry.compile import compile_scene
from .geometry.mesh import MeshSet
from .gestures import (
    DEFAULT_ANGLE_DEADBAND,
    DEFAULT_LENGTH_DEADBAND_FRACTION,
    LandmarkFrame,
    StabilizerState,
    opening_angle,
    pick_hand,
    pinch_length,
    stabilize,
    trace_profile,
)
from .nl.config import ProviderConfig
from .nl.interpret import interpret
from .nl.providers import make_provider, normalize_utterance
from .sdl.intents import apply_intent
from .sdl.model import ReplaceBlock, SceneProgram, SetParam
from .sdl.parser import parse_block_text, parse_program
from .sdl.printer import print_block, print_program
from .sdl.splice import splice_block

SAVE_VERSION = 1
STAGES = ("generation", "segmentation", "modification")
PINCH_TARGETS = ("extrude", "scale")


# -- events -------------------------------------------------------------------


@dataclass(frozen=True)
class Transcript:
    text: str


@dataclass(frozen=True)
class Audio:
    wav: bytes


@dataclass(frozen=True)
class GestureFrames:
    frames: tuple[LandmarkFrame, ...]
    mode: str  # pinch_length | opening_angle | trace


@dataclass(frozen=True)
class Select:
    component_id: str | None


@dataclass(frozen=True)
class SetUnitScale:
    meters_per_unit: float


@dataclass(frozen=True)
class Undo:
    pass


@dataclass(frozen=True)
class Redo:
    pass


@dataclass(frozen=True)
class SetStage:
    stage: str


Event = Transcript | Audio | GestureFrames | Select | SetUnitScale | Undo | Redo | SetStage


# -- state & updates ----------------------------------------------------------


@dataclass(frozen=True)
class SessionState:
    id: str
    cfg: ProviderConfig
    stage: str = "generation"
    program_text: str = ""
    history: tuple[str, ...] = ("",)
    cursor: int = 0
    selection: str | None = None
    meters_per_unit: float = 1.0
    revision: int = 0
    pinch_target: str = "extrude"
    stabilizers: Mapping[str, StabilizerState] = field(
        default_factory=lambda: MappingProxyType({})
    )

    def program(self) -> SceneProgram | None:
        if not self.program_text:
            return None
        result = parse_program(self.program_text)
        if result.program is None:  # invariant: stored text always parses
            raise SessionError(f"stored program no longer parses: {result.errors[0]}")
        return result.program


@dataclass(frozen=True)
class SceneUpdate:
    ok: bool
    changed: bool
    revision: int
    program_text: str
    stage: str
    selection: str | None
    mesh: MeshSet | None = None
    diagnostics: tuple[str, ...] = ()
    event_kind: str = ""
    error_code: str | None = None
    error_message: str | None = None


def new_session(cfg: ProviderConfig) -> SessionState:
    cfg.validate()
    return SessionState(id=uuid.uuid4().hex, cfg=cfg)


# -- internals ----------------------------------------------------------------


_EVENT_KINDS = {
    Transcript: "transcript",
    Audio: "audio",
    GestureFrames: "gesture_frames",
    Select: "select",
    SetUnitScale: "set_unit_scale",
    Undo: "undo",
    Redo: "redo",
    SetStage: "set_stage",
}

_ERROR_CODES = {
    IntentError: "invalid_intent",
    ProviderError: "provider_error",
    GestureError: "bad_gesture",
    GeometryError: "geometry_error",
    SessionError: "bad_event",
}


def _error_code(exc: D3Error) -> str:
    for cls, code in _ERROR_CODES.items():
        if isinstance(exc, cls):
            return code
    return "error"


def _failure(state: SessionState, kind: str, code: str, message: str) -> tuple[SessionState, SceneUpdate]:
    return state, SceneUpdate(
        ok=False,
        changed=False,
        revision=state.revision,
        program_text=state.program_text,
        stage=state.stage,
        selection=state.selection,
        event_kind=kind,
        error_code=code,
        error_message=message,
    )


def _ack(state: SessionState, kind: str) -> tuple[SessionState, SceneUpdate]:
    return state, SceneUpdate(
        ok=True,
        changed=False,
        revision=state.revision,
        program_text=state.program_text,
        stage=state.stage,
        selection=state.selection,
        event_kind=kind,
    )


def compile_state(state: SessionState) -> MeshSet | None:
    prog = state.program()
    return compile_scene(prog) if prog is not None else None


def _commit_text(
    state: SessionState,
    kind: str,
    new_text: str,
    *,
    stage: str | None = None,
    stabilizers: Mapping[str, StabilizerState] | None = None,
) -> tuple[SessionState, SceneUpdate]:
    """Push a changed program text as a new history snapshot and recompile.

    Unchanged text is acknowledged without touching history or revision.
    """
    if new_text == state.program_text:
        if stabilizers is not None:
            state = replace(state, stabilizers=MappingProxyType(dict(stabilizers)))
        return _ack(state, kind)

    parsed = parse_program(new_text)
    if parsed.program is None:  # defensive: callers validate upstream
        raise IntentError(
            "; ".join(str(d) for d in parsed.errors) or "edit produced an invalid program"
        )
    mesh = compile_scene(parsed.program)  # may raise; state untouched then

    selection = state.selection
    if selection is not None and parsed.program.component(selection) is None:
        selection = None
    new_stage = stage if stage is not None else state.stage

    history = state.history[: state.cursor + 1] + (new_text,)
    new_state = replace(
        state,
        program_text=new_text,
        history=history,
        cursor=state.cursor + 1,
        revision=state.revision + 1,
        stage=new_stage,
        selection=selection,
        stabilizers=MappingProxyType(dict(stabilizers))
        if stabilizers is not None
        else state.stabilizers,
    )
    update = SceneUpdate(
        ok=True,
        changed=True,
        revision=new_state.revision,
        program_text=new_text,
        stage=new_state.stage,
        selection=new_state.selection,
        mesh=mesh,
        diagnostics=tuple(str(d) for d in parsed.diagnostics),
        event_kind=kind,
    )
    return new_state, update


def _apply_text_edit(state: SessionState, kind: str, text: str) -> tuple[SessionState, SceneUpdate]:
    """Shared path for Transcript and transcribed Audio."""
    bare = normalize_utterance(text).strip(".!,? ")
    if state.stage == "modification" and state.selection and bare in ("scale", "depth"):
        target = "scale" if bare == "scale" else "extrude"
        if target == state.pinch_target:
            return _ack(state, kind)
        return _ack(replace(state, pinch_target=target), kind)

    prog = state.program()
    result = interpret(text, prog, state.selection, state.stage, state.cfg)
    op = result.op

    if isinstance(op, ReplaceBlock) and state.program_text:
        block, _diags = parse_block_text(op.block_text)
        if block is None:  # interpret's gate already parsed it; belt and braces
            raise IntentError("replacement block does not parse")
        spliced = splice_block(state.program_text, op.component_id, print_block(block, indent=1))
        if not spliced.ok:
            raise IntentError(spliced.error or "splice failed")
        new_text = spliced.text
    else:
        new_text = print_program(apply_intent(prog, op))

    stage = None
    if state.stage == "generation":
        stage = "segmentation"  # auto-advance after the first successful generation
    return _commit_text(state, kind, new_text, stage=stage)


def _stabilized(
    state: SessionState,
    key: str,
    raws: list[float],
    deadband: float,
    dynamic_fraction: float | None = None,
) -> tuple[float, dict[str, StabilizerState]]:
    """Run a batch of raw samples through the keyed stabilizer.

    A fresh key starts committed at the first sample. With
    `dynamic_fraction`, the deadband refreshes to that fraction of the
    committed value after the batch (pinch lengths scale with the model).
    """
    stab = state.stabilizers.get(key)
    if stab is None:
        stab = StabilizerState(
            ema_value=raws[0],
            committed_value=raws[0],
            deadband=deadband,
        )
        raws = raws[1:]
    committed = stab.committed_value
    for raw in raws:
        stab, committed = stabilize(stab, raw)
    if dynamic_fraction is not None:
        stab = replace(stab, deadband=dynamic_fraction * max(abs(committed), 1e-3))
    merged = dict(state.stabilizers)
    merged[key] = stab
    return committed, merged


def _apply_gesture(state: SessionState, ev: GestureFrames) -> tuple[SessionState, SceneUpdate]:
    kind = "gesture_frames"
    if not ev.frames:
        raise GestureError("gesture event carries no frames")
    if state.selection is None:
        raise GestureError("gestures need a selected component")
    prog = state.program()
    if prog is None:
        raise GestureError("no model yet; generate one before gesturing")
    target = prog.component(state.selection)
    if target is None:
        raise GestureError(f"selected component '{state.selection}' no longer exists")

    hand = pick_hand(ev.frames)

    if ev.mode == "pinch_length":
        raws = [
            pinch_length(f, hand, state.meters_per_unit)
            for f in ev.frames
            if f.hand(hand) is not None
        ]
        if not raws:
            raise GestureError(f"no frames contain the {hand} hand")
        key = f"{state.selection}:{state.pinch_target}"
        committed, stabilizers = _stabilized(
            state,
            key,
            raws,
            deadband=DEFAULT_LENGTH_DEADBAND_FRACTION * max(abs(raws[0]), 1e-3),
            dynamic_fraction=DEFAULT_LENGTH_DEADBAND_FRACTION,
        )
        op = SetParam(state.selection, state.pinch_target, committed)
    elif ev.mode == "opening_angle":
        raws = [
            opening_angle(f)
            for f in ev.frames
            if f.left is not None and f.right is not None
        ]
        if not raws:
            raise GestureError("opening angle needs frames with both hands")
        key = f"{state.selection}:attach.angle"
        committed, stabilizers = _stabilized(
            state, key, raws, deadband=DEFAULT_ANGLE_DEADBAND
        )
        op = SetParam(state.selection, "attach.angle", committed)
    elif ev.mode == "trace":
        profile = trace_profile(ev.frames, hand)
        new_block = replace(target, profile=profile)
        op = ReplaceBlock(state.selection, print_block(new_block, indent=1))
        stabilizers = None
    else:
        raise GestureError(f"unknown gesture mode {ev.mode!r}")

    if isinstance(op, ReplaceBlock):
        spliced = splice_block(state.program_text, op.component_id, op.block_text)
        if not spliced.ok:
            raise IntentError(spliced.error or "splice failed")
        new_text = spliced.text
    else:
        new_text = print_program(apply_intent(prog, op))
    return _commit_text(state, kind, new_text, stabilizers=stabilizers)


def undo(state: SessionState) -> tuple[SessionState, SceneUpdate]:
    if state.cursor == 0:
        return _failure(state, "undo", "nothing_to_undo", "already at the oldest state")
    return _move_cursor(state, "undo", state.cursor - 1)


def redo(state: SessionState) -> tuple[SessionState, SceneUpdate]:
    if state.cursor >= len(state.history) - 1:
        return _failure(state, "redo", "nothing_to_redo", "already at the newest state")
    return _move_cursor(state, "redo", state.cursor + 1)


def _move_cursor(state: SessionState, kind: str, cursor: int) -> tuple[SessionState, SceneUpdate]:
    new_text = state.history[cursor]
    mesh = None
    diagnostics: tuple[str, ...] = ()
    selection = state.selection
    if new_text:
        parsed = parse_program(new_text)
        if parsed.program is None:
            raise SessionError(f"history snapshot no longer parses: {parsed.errors[0]}")
        mesh = compile_scene(parsed.program)
        diagnostics = tuple(str(d) for d in parsed.diagnostics)
        if selection is not None and parsed.program.component(selection) is None:
            selection = None
    else:
        selection = None
    new_state = replace(
        state,
        cursor=cursor,
        program_text=new_text,
        revision=state.revision + 1,
        selection=selection,
    )
    update = SceneUpdate(
        ok=True,
        changed=True,
        revision=new_state.revision,
        program_text=new_text,
        stage=new_state.stage,
        selection=new_state.selection,
        mesh=mesh,
        diagnostics=diagnostics,
        event_kind=kind,
    )
    return new_state, update


# -- the dispatcher -----------------------------------------------------------


def handle_event(state: SessionState, ev: Event) -> tuple[SessionState, SceneUpdate]:
    """Apply one event; on any engine error the original state is returned
    with an error update (atomic failure)."""
    kind = _EVENT_KINDS.get(type(ev), "event")
    try:
        if isinstance(ev, Transcript):
            if not ev.text.strip():
                raise SessionError("transcript is empty")
            return _apply_text_edit(state, "transcript", ev.text)
        if isinstance(ev, Audio):
            provider = make_provider(state.cfg)
            text = provider.transcribe(ev.wav)
            if not text.strip():
                raise ProviderError("transcription produced empty text")
            return _apply_text_edit(state, "audio", text)
        if isinstance(ev, GestureFrames):
            return _apply_gesture(state, ev)
        if isinstance(ev, Select):
            if ev.component_id is None:
                if state.selection is None:
                    return _ack(state, "select")
                return _ack(replace(state, selection=None), "select")
            prog = state.program()
            if prog is None or prog.component(ev.component_id) is None:
                raise SessionError(f"unknown component '{ev.component_id}'")
            if ev.component_id == state.selection:
                return _ack(state, "select")
            return _ack(replace(state, selection=ev.component_id), "select")
        if isinstance(ev, SetUnitScale):
            v = ev.meters_per_unit
            if not (isinstance(v, (int, float)) and v == v and 0 < v < float("inf")):
                raise SessionError(f"meters_per_unit must be a positive number, got {v!r}")
            if float(v) == state.meters_per_unit:
                return _ack(state, "set_unit_scale")
            return _ack(replace(state, meters_per_unit=float(v)), "set_unit_scale")
        if isinstance(ev, Undo):
            return undo(state)
        if isinstance(ev, Redo):
            return redo(state)
        if isinstance(ev, SetStage):
            if ev.stage not in STAGES:
                raise SessionError(f"unknown stage {ev.stage!r}")
            if ev.stage == state.stage:
                return _ack(state, "set_stage")
            return _ack(replace(state, stage=ev.stage), "set_stage")
        raise SessionError(f"unknown event type {type(ev).__name__}")
    except D3Error as exc:
        return _failure(state, kind, _error_code(exc), str(exc))


# -- persistence ---------------------------------------------------------------


def save_session(state: SessionState, path: str) -> None:
    """Persist everything except provider credentials (never written)."""
    doc = {
        "version": SAVE_VERSION,
        "id": state.id,
        "stage": state.stage,
        "history": list(state.history),
        "cursor": state.cursor,
        "selection": state.selection,
        "meters_per_unit": state.meters_per_unit,
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(doc, handle, indent=2)
        handle.write("\n")


def load_session(path: str, cfg: ProviderConfig) -> SessionState:
    cfg.validate()
    try:
        with open(path, encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise SessionError(f"cannot read session file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SessionError(f"session file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("version") != SAVE_VERSION:
        raise SessionError(
            f"unsupported session file version {doc.get('version')!r}"
            if isinstance(doc, dict)
            else "session file must be a JSON object"
        )
    history = doc.get("history")
    cursor = doc.get("cursor")
    if (
        not isinstance(history, list)
        or not all(isinstance(t, str) for t in history)
        or not history
        or not isinstance(cursor, int)
        or not 0 <= cursor < len(history)
    ):
        raise SessionError("session file has a corrupt history/cursor")
    stage = doc.get("stage")
    if stage not in STAGES:
        raise SessionError(f"session file has an unknown stage {stage!r}")
    program_text = history[cursor]
    if program_text and parse_program(program_text).program is None:
        raise SessionError("session file's current program does not parse")
    selection = doc.get("selection")
    if selection is not None and not isinstance(selection, str):
        raise SessionError("session file selection must be a string or null")
    mpu = doc.get("meters_per_unit")
    if not isinstance(mpu, (int, float)) or not 0 < float(mpu) < float("inf"):
        raise SessionError("session file meters_per_unit must be a positive number")
    session_id = doc.get("id")
    if not isinstance(session_id, str) or not session_id:
        raise SessionError("session file id must be a non-empty string")
    return SessionState(
        id=session_id,
        cfg=cfg,
        stage=stage,
        program_text=program_text,
        history=tuple(history),
        cursor=cursor,
        selection=selection,
        meters_per_unit=float(mpu),
        revision=cursor,
    )
