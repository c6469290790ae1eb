"""Command line: headless script runner and the service launcher.

`d3 run --script flow.json --out dir` replays a recorded flow (transcripts,
gesture frame batches, selections, undo/redo, stage switches) against a
fresh session and writes final.sdl/final.obj/final.gltf plus events.json.
Exit codes: 0 all steps applied, 1 a step failed (partial outputs kept,
failure noted in events.json), 2 the script itself is invalid.

`d3 serve [--bind host:port]` starts the HTTP/WebSocket service.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import D3Error, GestureError
from .geometry.compile import compile_scene
from .geometry.export import export_mesh
from .gestures import decode_frames
from .nl.config import ProviderConfig
from .service import DEFAULT_BIND, ENV_BIND, create_app
from .session import (
    Event,
    GestureFrames,
    Redo,
    Select,
    SessionState,
    SetStage,
    Transcript,
    Undo,
    handle_event,
    new_session,
)

STEP_KINDS = ("transcript", "gesture", "select", "undo", "redo", "stage")


class ScriptError(Exception):
    def __init__(self, index: int, message: str):
        self.index = index
        self.message = message
        super().__init__(f"step {index}: {message}")


def _decode_step(index: int, step: object) -> Event:
    if not isinstance(step, dict):
        raise ScriptError(index, "step must be an object")
    kind = step.get("kind")
    if kind not in STEP_KINDS:
        raise ScriptError(index, f"unknown step kind {kind!r}")
    try:
        if kind == "transcript":
            text = step.get("text")
            if not isinstance(text, str) or not text.strip():
                raise ScriptError(index, "transcript step needs non-empty 'text'")
            return Transcript(text)
        if kind == "gesture":
            frames = step.get("frames")
            mode = step.get("mode")
            if not isinstance(frames, list) or not isinstance(mode, str):
                raise ScriptError(index, "gesture step needs 'frames' (list) and 'mode'")
            return GestureFrames(frames=tuple(decode_frames(frames)), mode=mode)
        if kind == "select":
            component = step.get("component")
            if component is not None and not isinstance(component, str):
                raise ScriptError(index, "select step 'component' must be a string or null")
            return Select(component)
        if kind == "undo":
            return Undo()
        if kind == "redo":
            return Redo()
        stage = step.get("stage")
        if not isinstance(stage, str):
            raise ScriptError(index, "stage step needs 'stage'")
        return SetStage(stage)
    except GestureError as exc:
        raise ScriptError(index, f"bad gesture frames: {exc}") from exc


def _write_events(out_dir: Path, steps: list[dict], failure: dict | None) -> None:
    doc = {"steps": steps, "failure": failure}
    (out_dir / "events.json").write_text(
        json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _write_outputs(out_dir: Path, state: SessionState) -> None:
    (out_dir / "final.sdl").write_text(state.program_text, encoding="utf-8")
    prog = state.program()
    if prog is None:
        return
    mesh = compile_scene(prog)
    (out_dir / "final.obj").write_bytes(export_mesh(mesh, "obj"))
    (out_dir / "final.gltf").write_bytes(export_mesh(mesh, "gltf"))


def run_script(script_path: str, out_dir: str, cfg: ProviderConfig) -> int:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    try:
        script = json.loads(Path(script_path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        _write_events(out, [], {"index": None, "message": f"cannot read script: {exc}"})
        print(f"error: cannot read script: {exc}", file=sys.stderr)
        return 2
    raw_steps = script.get("steps") if isinstance(script, dict) else None
    if not isinstance(raw_steps, list):
        _write_events(out, [], {"index": None, "message": "script must be {\"steps\": [...]}"})
        print("error: script must be a JSON object with a 'steps' list", file=sys.stderr)
        return 2

    try:
        events = [_decode_step(i, s) for i, s in enumerate(raw_steps)]
    except ScriptError as exc:
        _write_events(out, [], {"index": exc.index, "message": exc.message})
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        state = new_session(cfg)
    except D3Error as exc:
        _write_events(out, [], {"index": None, "message": f"cannot start session: {exc}"})
        print(f"error: {exc}", file=sys.stderr)
        return 2

    logged: list[dict] = []
    failure: dict | None = None
    for index, event in enumerate(events):
        state, update = handle_event(state, event)
        entry = {
            "index": index,
            "kind": raw_steps[index]["kind"],
            "ok": update.ok,
            "changed": update.changed,
            "revision": update.revision,
            "diagnostics": list(update.diagnostics),
        }
        if not update.ok:
            entry["error_code"] = update.error_code
            entry["error_message"] = update.error_message
            failure = {"index": index, "message": update.error_message}
        logged.append(entry)
        if failure is not None:
            break

    _write_outputs(out, state)
    _write_events(out, logged, failure)
    if failure is not None:
        print(f"step {failure['index']} failed: {failure['message']}", file=sys.stderr)
        return 1
    return 0


def _cfg_for_run(args: argparse.Namespace) -> ProviderConfig:
    return ProviderConfig.from_env(
        mode="live" if args.live else "mock",
        fixtures_path=args.fixtures,
    )


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="d3", description="Text+gesture 3D modeling engine")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="replay a script file against a fresh session")
    run_p.add_argument("--script", required=True, help="script JSON path")
    run_p.add_argument("--out", required=True, help="output directory")
    run_p.add_argument("--live", action="store_true", help="use the live provider (default: mock)")
    run_p.add_argument("--fixtures", default=None, help="fixture file for mock mode")

    serve_p = sub.add_parser("serve", help="start the HTTP/WebSocket service")
    serve_p.add_argument(
        "--bind",
        default=os.environ.get(ENV_BIND, DEFAULT_BIND),
        help=f"host:port (default {DEFAULT_BIND})",
    )

    args = parser.parse_args(argv)

    if args.command == "run":
        try:
            cfg = _cfg_for_run(args)
        except D3Error as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        return run_script(args.script, args.out, cfg)

    host, _, port_text = args.bind.rpartition(":")
    if not host or not port_text.isdigit():
        print(f"error: --bind must be host:port, got {args.bind!r}", file=sys.stderr)
        return 2
    import uvicorn

    uvicorn.run(create_app(), host=host, port=int(port_text))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
