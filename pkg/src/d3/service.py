"""HTTP + WebSocket service exposing sessions to thin clients.

Endpoints: POST /session (create, returns id/token/ws path), GET
/session/{id} (scene snapshot), GET /session/{id}/export?format=obj|gltf,
WS /session/{id}/ws?token=... (the event loop). One reply per client
message; scene updates are additionally pushed to any other open socket on
the same session. Per-session events serialize through an asyncio lock.
"""

from __future__ import annotations

import asyncio
import base64
import binascii
import json
import secrets
from dataclasses import dataclass, field

from fastapi import FastAPI, Response, WebSocket, WebSocketDisconnect

from .errors import D3Error, GestureError, SessionError
from .geometry.compile import compile_scene
from .geometry.export import export_mesh
from .geometry.mesh import MeshSet
from .gestures import decode_frames
from .nl.config import ProviderConfig
from .sdl.colors import format_hex
from .session import (
    Audio,
    Event,
    GestureFrames,
    Redo,
    SceneUpdate,
    Select,
    SessionState,
    SetStage,
    SetUnitScale,
    Transcript,
    Undo,
    handle_event,
    new_session,
)

MAX_FRAME_BYTES = 1 << 20  # 1 MiB

DEFAULT_BIND = "127.0.0.1:8787"
ENV_BIND = "D3_BIND"

_EXPORT_TYPES = {"obj": "model/obj", "gltf": "model/gltf-binary"}


def encode_mesh(mesh: MeshSet | None) -> list[dict]:
    if mesh is None:
        return []
    out = []
    for entry in mesh.entries:
        out.append(
            {
                "id": entry.component_id,
                "positions": [float(v) for v in entry.mesh.positions.reshape(-1)],
                "indices": [int(v) for v in entry.mesh.indices.reshape(-1)],
                "color": format_hex(entry.color),
                "transform": [float(v) for v in entry.world_transform.reshape(-1)],
            }
        )
    return out


def encode_scene(state: SessionState, mesh: MeshSet | None) -> dict:
    return {
        "type": "scene",
        "revision": state.revision,
        "sdl": state.program_text,
        "mesh": encode_mesh(mesh),
        "stage": state.stage,
        "selection": state.selection,
    }


def scene_snapshot(state: SessionState) -> dict:
    prog = state.program()
    return encode_scene(state, compile_scene(prog) if prog is not None else None)


def _error(code: str, message: str) -> dict:
    return {"type": "error", "code": code, "message": message}


_KNOWN_TYPES = (
    "transcript",
    "audio",
    "gesture_frames",
    "select",
    "set_unit_scale",
    "set_stage",
    "undo",
    "redo",
)


def decode_event(doc: dict) -> Event:
    kind = doc.get("type")
    if kind == "transcript":
        text = doc.get("text")
        if not isinstance(text, str):
            raise SessionError("transcript.text must be a string")
        return Transcript(text)
    if kind == "audio":
        encoded = doc.get("wav_base64")
        if not isinstance(encoded, str):
            raise SessionError("audio.wav_base64 must be a string")
        try:
            wav = base64.b64decode(encoded, validate=True)
        except (binascii.Error, ValueError) as exc:
            raise SessionError(f"audio.wav_base64 is not valid base64: {exc}") from exc
        return Audio(wav)
    if kind == "gesture_frames":
        frames = doc.get("frames")
        mode = doc.get("mode")
        if not isinstance(frames, list):
            raise SessionError("gesture_frames.frames must be a list")
        if not isinstance(mode, str):
            raise SessionError("gesture_frames.mode must be a string")
        return GestureFrames(frames=tuple(decode_frames(frames)), mode=mode)
    if kind == "select":
        component = doc.get("component")
        if component is not None and not isinstance(component, str):
            raise SessionError("select.component must be a string or null")
        return Select(component)
    if kind == "set_unit_scale":
        value = doc.get("meters_per_unit")
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise SessionError("set_unit_scale.meters_per_unit must be a number")
        return SetUnitScale(float(value))
    if kind == "set_stage":
        stage = doc.get("stage")
        if not isinstance(stage, str):
            raise SessionError("set_stage.stage must be a string")
        return SetStage(stage)
    if kind == "undo":
        return Undo()
    if kind == "redo":
        return Redo()
    raise AssertionError(kind)  # callers check _KNOWN_TYPES first


def encode_update(state: SessionState, update: SceneUpdate) -> dict:
    if not update.ok:
        return _error(update.error_code or "error", update.error_message or "")
    if update.changed:
        return encode_scene(state, update.mesh)
    return {"type": "ack", "for": update.event_kind}


def handle_ws_message(state: SessionState, raw: str) -> tuple[SessionState, dict, bool]:
    """One wire message in, (new state, reply, scene-changed flag) out.

    Protocol-level junk (oversized, bad JSON, unknown type, bad payload
    shape) never reaches the session and leaves state untouched.
    """
    if len(raw.encode("utf-8", errors="replace")) > MAX_FRAME_BYTES:
        return state, _error("oversized_frame", f"frame exceeds {MAX_FRAME_BYTES} bytes"), False
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        return state, _error("bad_json", str(exc)), False
    if not isinstance(doc, dict) or doc.get("type") not in _KNOWN_TYPES:
        found = doc.get("type") if isinstance(doc, dict) else None
        return state, _error("unknown_type", f"unknown message type {found!r}"), False
    try:
        event = decode_event(doc)
    except GestureError as exc:
        return state, _error("bad_gesture", str(exc)), False
    except D3Error as exc:
        return state, _error("bad_event", str(exc)), False
    new_state, update = handle_event(state, event)
    return new_state, encode_update(new_state, update), update.ok and update.changed


@dataclass
class SessionHandle:
    state: SessionState
    token: str
    lock: asyncio.Lock = field(default_factory=asyncio.Lock)
    sockets: set = field(default_factory=set)


def create_app(cfg: ProviderConfig | None = None) -> FastAPI:
    app = FastAPI(title="d3", docs_url=None, redoc_url=None)
    sessions: dict[str, SessionHandle] = {}
    registry_lock = asyncio.Lock()
    app.state.sessions = sessions

    def provider_cfg() -> ProviderConfig:
        return cfg if cfg is not None else ProviderConfig.from_env()

    @app.post("/session")
    async def create_session():
        try:
            state = new_session(provider_cfg())
        except D3Error as exc:
            return _json_error(500, str(exc))
        handle = SessionHandle(state=state, token=secrets.token_hex(16))
        async with registry_lock:
            sessions[state.id] = handle
        return {
            "id": state.id,
            "token": handle.token,
            "ws_url": f"/session/{state.id}/ws?token={handle.token}",
        }

    @app.get("/session/{session_id}")
    async def get_session(session_id: str) -> Response:
        handle = sessions.get(session_id)
        if handle is None:
            return _json_error(404, f"unknown session {session_id!r}")
        async with handle.lock:
            snapshot = scene_snapshot(handle.state)
            snapshot["id"] = session_id
        return Response(content=json.dumps(snapshot), media_type="application/json")

    @app.get("/session/{session_id}/export")
    async def export_session(session_id: str, format: str = "obj") -> Response:
        handle = sessions.get(session_id)
        if handle is None:
            return _json_error(404, f"unknown session {session_id!r}")
        if format not in _EXPORT_TYPES:
            return _json_error(400, f"unknown format {format!r} (expected obj or gltf)")
        async with handle.lock:
            prog = handle.state.program()
            if prog is None:
                return _json_error(409, "session has an empty program")
            data = export_mesh(compile_scene(prog), format)
        return Response(content=data, media_type=_EXPORT_TYPES[format])

    @app.websocket("/session/{session_id}/ws")
    async def session_ws(websocket: WebSocket, session_id: str, token: str = "") -> None:
        handle = sessions.get(session_id)
        if handle is None or token != handle.token:
            await websocket.close(code=1008)
            return
        await websocket.accept()
        handle.sockets.add(websocket)
        try:
            async with handle.lock:
                await websocket.send_text(json.dumps(scene_snapshot(handle.state)))
            while True:
                raw = await websocket.receive_text()
                async with handle.lock:
                    new_state, reply, changed = await asyncio.to_thread(
                        handle_ws_message, handle.state, raw
                    )
                    handle.state = new_state
                    await websocket.send_text(json.dumps(reply))
                    if changed:
                        for sock in list(handle.sockets):
                            if sock is websocket:
                                continue
                            try:
                                await sock.send_text(json.dumps(reply))
                            except Exception:
                                handle.sockets.discard(sock)
        except WebSocketDisconnect:
            pass
        finally:
            handle.sockets.discard(websocket)

    return app


def _json_error(status: int, message: str) -> Response:
    return Response(
        content=json.dumps({"error": message}),
        status_code=status,
        media_type="application/json",
    )
