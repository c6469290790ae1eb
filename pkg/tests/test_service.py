import base64
import json
import struct

import pytest
from conftest import DEMO_FIXTURES
from starlette.testclient import TestClient
from starlette.websockets import WebSocketDisconnect

from d3.nl.config import ProviderConfig
from d3.service import MAX_FRAME_BYTES, create_app


@pytest.fixture
def client():
    cfg = ProviderConfig(mode="mock", fixtures_path=str(DEMO_FIXTURES))
    app = create_app(cfg)
    with TestClient(app) as c:
        yield c


def new_session(client):
    resp = client.post("/session")
    assert resp.status_code == 200
    doc = resp.json()
    assert set(doc) == {"id", "token", "ws_url"}
    assert doc["ws_url"] == f"/session/{doc['id']}/ws?token={doc['token']}"
    return doc


# -- HTTP -----------------------------------------------------------------------


def test_create_and_snapshot(client):
    doc = new_session(client)
    snap = client.get(f"/session/{doc['id']}")
    assert snap.status_code == 200
    body = snap.json()
    assert body["type"] == "scene"
    assert body["revision"] == 0
    assert body["sdl"] == ""
    assert body["mesh"] == []
    assert body["stage"] == "generation"
    assert body["selection"] is None


def test_snapshot_unknown_session(client):
    resp = client.get("/session/nope")
    assert resp.status_code == 404
    assert "error" in resp.json()


def test_tokens_are_unpredictable(client):
    a = new_session(client)
    b = new_session(client)
    assert a["token"] != b["token"]
    assert len(a["token"]) == 32
    assert a["token"] != a["id"]
    assert a["token"] != a["id"][::-1]


def test_export_empty_session_conflicts(client):
    doc = new_session(client)
    resp = client.get(f"/session/{doc['id']}/export?format=obj")
    assert resp.status_code == 409


def test_export_unknown_session_and_format(client):
    assert client.get("/session/nope/export?format=obj").status_code == 404
    doc = new_session(client)
    assert client.get(f"/session/{doc['id']}/export?format=stl").status_code == 400


def test_export_after_edit(client):
    doc = new_session(client)
    with client.websocket_connect(doc["ws_url"]) as ws:
        ws.receive_json()  # initial snapshot
        ws.send_json({"type": "transcript", "text": "Rectangle."})
        reply = ws.receive_json()
        assert reply["type"] == "scene"

    obj = client.get(f"/session/{doc['id']}/export?format=obj")
    assert obj.status_code == 200
    assert obj.headers["content-type"].startswith("model/obj")
    assert obj.text.startswith("o ") or "\no " in obj.text

    glb = client.get(f"/session/{doc['id']}/export?format=gltf")
    assert glb.status_code == 200
    assert glb.headers["content-type"].startswith("model/gltf-binary")
    magic = struct.unpack_from("<I", glb.content, 0)[0]
    assert magic == 0x46546C67


# -- WS auth -------------------------------------------------------------------------


def test_ws_rejects_bad_token(client):
    doc = new_session(client)
    with pytest.raises(WebSocketDisconnect) as exc_info:
        with client.websocket_connect(f"/session/{doc['id']}/ws?token=wrong") as ws:
            ws.receive_json()
    assert exc_info.value.code == 1008


def test_ws_rejects_unknown_session(client):
    with pytest.raises(WebSocketDisconnect):
        with client.websocket_connect("/session/nope/ws?token=x") as ws:
            ws.receive_json()


# -- WS protocol ----------------------------------------------------------------------


def test_ws_initial_snapshot_then_edit(client):
    doc = new_session(client)
    with client.websocket_connect(doc["ws_url"]) as ws:
        snap = ws.receive_json()
        assert snap["type"] == "scene"
        assert snap["revision"] == 0

        ws.send_json({"type": "transcript", "text": "Rectangle."})
        scene = ws.receive_json()
        assert scene["type"] == "scene"
        assert scene["revision"] == 1
        assert scene["stage"] == "segmentation"
        assert len(scene["mesh"]) == 1
        entry = scene["mesh"][0]
        assert set(entry) == {"id", "positions", "indices", "color", "transform"}
        assert len(entry["positions"]) % 3 == 0
        assert len(entry["positions"]) >= 8 * 3
        assert len(entry["indices"]) % 3 == 0
        assert max(entry["indices"]) < len(entry["positions"]) // 3
        assert entry["color"].startswith("#") and len(entry["color"]) == 7
        assert len(entry["transform"]) == 16
        # row-major identity for the root component
        assert entry["transform"] == [
            1.0, 0.0, 0.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 1.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
        ]


def test_ws_acks_non_scene_events(client):
    doc = new_session(client)
    with client.websocket_connect(doc["ws_url"]) as ws:
        ws.receive_json()
        ws.send_json({"type": "set_unit_scale", "meters_per_unit": 0.5})
        reply = ws.receive_json()
        assert reply == {"type": "ack", "for": "set_unit_scale"}


def test_ws_session_errors_keep_connection(client):
    doc = new_session(client)
    with client.websocket_connect(doc["ws_url"]) as ws:
        ws.receive_json()
        ws.send_json({"type": "undo"})
        reply = ws.receive_json()
        assert reply["type"] == "error"
        assert reply["code"] == "nothing_to_undo"

        # still alive afterwards
        ws.send_json({"type": "transcript", "text": "Rectangle."})
        assert ws.receive_json()["type"] == "scene"


def test_ws_bad_json(client):
    doc = new_session(client)
    with client.websocket_connect(doc["ws_url"]) as ws:
        ws.receive_json()
        ws.send_text("{nope")
        reply = ws.receive_json()
        assert reply["type"] == "error" and reply["code"] == "bad_json"
        ws.send_json({"type": "undo"})
        assert ws.receive_json()["code"] == "nothing_to_undo"  # connection survives


def test_ws_unknown_type(client):
    doc = new_session(client)
    with client.websocket_connect(doc["ws_url"]) as ws:
        ws.receive_json()
        ws.send_json({"type": "dance"})
        reply = ws.receive_json()
        assert reply["type"] == "error" and reply["code"] == "unknown_type"
        ws.send_text(json.dumps([1, 2, 3]))
        assert ws.receive_json()["code"] == "unknown_type"


def test_ws_oversized_frame(client):
    doc = new_session(client)
    with client.websocket_connect(doc["ws_url"]) as ws:
        ws.receive_json()
        padding = "x" * (MAX_FRAME_BYTES + 10)
        ws.send_text(json.dumps({"type": "transcript", "text": padding}))
        reply = ws.receive_json()
        assert reply["type"] == "error" and reply["code"] == "oversized_frame"


def test_ws_bad_gesture_payload(client):
    doc = new_session(client)
    with client.websocket_connect(doc["ws_url"]) as ws:
        ws.receive_json()
        ws.send_json({"type": "gesture_frames", "mode": "pinch_length", "frames": [{"timestamp_ms": 0}]})
        reply = ws.receive_json()
        assert reply["type"] == "error" and reply["code"] == "bad_gesture"


def test_ws_bad_audio_base64(client):
    doc = new_session(client)
    with client.websocket_connect(doc["ws_url"]) as ws:
        ws.receive_json()
        ws.send_json({"type": "audio", "wav_base64": "@@@not-base64@@@"})
        reply = ws.receive_json()
        assert reply["type"] == "error" and reply["code"] == "bad_event"


def test_ws_audio_transcribes(client, tmp_path):
    # audio path needs a transcription fixture, so run a private app
    from test_nl import make_wav
    import hashlib

    wav = make_wav()
    fixtures = json.loads(DEMO_FIXTURES.read_text())
    fixtures["transcribe:" + hashlib.sha256(wav).hexdigest()] = "Rectangle."
    fx = tmp_path / "fx.json"
    fx.write_text(json.dumps(fixtures))
    app = create_app(ProviderConfig(mode="mock", fixtures_path=str(fx)))
    with TestClient(app) as c:
        doc = new_session(c)
        with c.websocket_connect(doc["ws_url"]) as ws:
            ws.receive_json()
            ws.send_json({"type": "audio", "wav_base64": base64.b64encode(wav).decode()})
            reply = ws.receive_json()
            assert reply["type"] == "scene"
            assert "rect" in reply["sdl"]


def test_ws_select_flow(client):
    doc = new_session(client)
    with client.websocket_connect(doc["ws_url"]) as ws:
        ws.receive_json()
        ws.send_json({"type": "transcript", "text": "Rectangle."})
        scene = ws.receive_json()
        component = scene["mesh"][0]["id"]

        ws.send_json({"type": "select", "component": component})
        assert ws.receive_json() == {"type": "ack", "for": "select"}

        ws.send_json({"type": "select", "component": "ghost"})
        reply = ws.receive_json()
        assert reply["type"] == "error" and reply["code"] == "bad_event"

        ws.send_json({"type": "select", "component": None})
        assert ws.receive_json() == {"type": "ack", "for": "select"}


def test_ws_broadcast_to_other_sockets(client):
    doc = new_session(client)
    with client.websocket_connect(doc["ws_url"]) as a, client.websocket_connect(doc["ws_url"]) as b:
        a.receive_json()
        b.receive_json()
        a.send_json({"type": "transcript", "text": "Rectangle."})
        reply_a = a.receive_json()
        pushed_b = b.receive_json()
        assert reply_a["type"] == "scene"
        assert pushed_b == reply_a
        # acks are not broadcast
        a.send_json({"type": "set_stage", "stage": "modification"})
        assert a.receive_json() == {"type": "ack", "for": "set_stage"}
        a.send_json({"type": "undo"})
        reply_a = a.receive_json()
        assert reply_a["type"] == "scene"  # undo changed the scene
        assert b.receive_json() == reply_a


def test_ws_serial_ordering(client):
    doc = new_session(client)
    with client.websocket_connect(doc["ws_url"]) as ws:
        ws.receive_json()
        ws.send_json({"type": "transcript", "text": "Rectangle."})
        assert ws.receive_json()["revision"] == 1

        # a burst of alternating undo/redo: one reply per message, in order,
        # each with a strictly increasing revision
        n = 100
        for _ in range(n // 2):
            ws.send_json({"type": "undo"})
            ws.send_json({"type": "redo"})
        revisions = []
        for _ in range(n):
            reply = ws.receive_json()
            assert reply["type"] == "scene"
            revisions.append(reply["revision"])
        assert revisions == list(range(2, 2 + n))


def test_http_snapshot_sees_ws_edits(client):
    doc = new_session(client)
    with client.websocket_connect(doc["ws_url"]) as ws:
        ws.receive_json()
        ws.send_json({"type": "transcript", "text": "Rectangle."})
        ws.receive_json()
    snap = client.get(f"/session/{doc['id']}").json()
    assert snap["revision"] == 1
    assert "rect" in snap["sdl"]
