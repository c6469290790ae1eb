"""Hand-landmark interpretation: pinch lengths, opening angles, stabilized
scalars, traced 2D profiles, and deterministic trace descriptions.

Frames carry up to two hands with 7 points each (thumb tip/ip/mcp plus
index tip/dip/pip/mcp) in normalized image coordinates. Everything here is
pure; streaming state lives in the caller-owned StabilizerState.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GestureError
from .geometry.outline import is_simple_polygon, resample_closed
from .sdl.model import PolygonProfile

Vec3 = tuple[float, float, float]

POINT_NAMES = (
    "thumb_tip",
    "thumb_ip",
    "thumb_mcp",
    "index_tip",
    "index_dip",
    "index_pip",
    "index_mcp",
)

TRACE_POINTS = 32
MIN_TRACE_FRAMES = 8
DEFAULT_ALPHA = 0.4
DEFAULT_ANGLE_DEADBAND = 2.0  # degrees
DEFAULT_LENGTH_DEADBAND_FRACTION = 0.02  # of the committed value


@dataclass(frozen=True)
class HandPoints:
    thumb_tip: Vec3
    thumb_ip: Vec3
    thumb_mcp: Vec3
    index_tip: Vec3
    index_dip: Vec3
    index_pip: Vec3
    index_mcp: Vec3

    def point(self, name: str) -> Vec3:
        return getattr(self, name)


@dataclass(frozen=True)
class LandmarkFrame:
    timestamp_ms: int
    left: HandPoints | None = None
    right: HandPoints | None = None

    def hand(self, which: str) -> HandPoints | None:
        if which == "left":
            return self.left
        if which == "right":
            return self.right
        raise GestureError(f"unknown hand {which!r} (expected 'left' or 'right')")


@dataclass(frozen=True)
class StabilizerState:
    ema_value: float
    committed_value: float
    alpha: float = DEFAULT_ALPHA
    deadband: float = DEFAULT_ANGLE_DEADBAND


# -- decoding ---------------------------------------------------------------


def _decode_hand(obj: object, which: str) -> HandPoints | None:
    if obj is None:
        return None
    if not isinstance(obj, dict):
        raise GestureError(f"{which} hand must be an object of named points")
    points = {}
    for name in POINT_NAMES:
        raw = obj.get(name)
        if (
            not isinstance(raw, (list, tuple))
            or len(raw) != 3
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw)
        ):
            raise GestureError(f"{which}.{name} must be [x, y, z]")
        x, y, z = (float(v) for v in raw)
        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
            raise GestureError(f"{which}.{name} has non-finite coordinates")
        if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
            raise GestureError(f"{which}.{name} x,y must be in [0, 1], got ({x}, {y})")
        points[name] = (x, y, z)
    return HandPoints(**points)


def decode_frame(obj: dict) -> LandmarkFrame:
    if not isinstance(obj, dict):
        raise GestureError("frame must be a JSON object")
    ts = obj.get("timestamp_ms")
    if not isinstance(ts, int) or isinstance(ts, bool):
        raise GestureError("frame.timestamp_ms must be an integer")
    left = _decode_hand(obj.get("left"), "left")
    right = _decode_hand(obj.get("right"), "right")
    if left is None and right is None:
        raise GestureError("frame must contain at least one hand")
    return LandmarkFrame(timestamp_ms=ts, left=left, right=right)


def decode_frames(objs: Sequence[dict]) -> list[LandmarkFrame]:
    frames = [decode_frame(o) for o in objs]
    for prev, cur in zip(frames, frames[1:]):
        if cur.timestamp_ms <= prev.timestamp_ms:
            raise GestureError(
                f"timestamps must be strictly increasing ({prev.timestamp_ms} then {cur.timestamp_ms})"
            )
    return frames


# -- scalar gestures ---------------------------------------------------------


def pinch_length(frame: LandmarkFrame, hand: str, meters_per_unit: float) -> float:
    """Thumb-tip to index-tip distance, scaled to the chosen unit."""
    if meters_per_unit <= 0:
        raise GestureError(f"meters_per_unit must be > 0, got {meters_per_unit}")
    points = frame.hand(hand)
    if points is None:
        raise GestureError(f"{hand} hand not present in frame")
    ax, ay, az = points.thumb_tip
    bx, by, bz = points.index_tip
    return math.dist((ax, ay, az), (bx, by, bz)) * meters_per_unit


def opening_angle(frame: LandmarkFrame) -> float:
    """Angle in degrees between the two index-finger directions
    (mcp -> tip), projected onto the image plane."""
    if frame.left is None or frame.right is None:
        raise GestureError("opening angle needs both hands in the frame")
    vecs = []
    for points in (frame.left, frame.right):
        dx = points.index_tip[0] - points.index_mcp[0]
        dy = points.index_tip[1] - points.index_mcp[1]
        norm = math.hypot(dx, dy)
        if norm < 1e-12:
            raise GestureError("index finger direction is zero-length in the image plane")
        vecs.append((dx / norm, dy / norm))
    dot = vecs[0][0] * vecs[1][0] + vecs[0][1] * vecs[1][1]
    return math.degrees(math.acos(max(-1.0, min(1.0, dot))))


def stabilize(state: StabilizerState, raw: float) -> tuple[StabilizerState, float]:
    """One EMA + deadband step; committed moves only past the deadband."""
    if not math.isfinite(raw):
        raise GestureError(f"raw value must be finite, got {raw}")
    ema = state.alpha * raw + (1.0 - state.alpha) * state.ema_value
    committed = state.committed_value
    if abs(ema - committed) > state.deadband:
        committed = ema
    new_state = StabilizerState(
        ema_value=ema,
        committed_value=committed,
        alpha=state.alpha,
        deadband=state.deadband,
    )
    return new_state, committed


# -- traces -------------------------------------------------------------------


def _trace_path(frames: Iterable[LandmarkFrame], hand: str) -> list[tuple[float, float]]:
    path = []
    for frame in frames:
        points = frame.hand(hand)
        if points is not None:
            # Flip y so the on-screen trace keeps its handedness in model
            # space (image y grows downward).
            path.append((points.index_tip[0], -points.index_tip[1]))
    return path


def trace_profile(frames: Sequence[LandmarkFrame], hand: str) -> PolygonProfile:
    """Close the index-tip path, resample it to 32 even points, and return
    it as a polygon profile centered on its centroid."""
    path = _trace_path(frames, hand)
    if len(path) < MIN_TRACE_FRAMES:
        raise GestureError(
            f"trace needs at least {MIN_TRACE_FRAMES} frames with the {hand} hand, got {len(path)}"
        )
    try:
        resampled = resample_closed(tuple(path), TRACE_POINTS)
    except Exception as exc:
        raise GestureError(f"degenerate trace: {exc}") from exc
    cx = sum(p[0] for p in resampled) / len(resampled)
    cy = sum(p[1] for p in resampled) / len(resampled)
    centered = tuple((x - cx, y - cy) for x, y in resampled)
    if not is_simple_polygon(centered):
        raise GestureError("traced outline self-intersects")
    return PolygonProfile(vertices=centered)


def _dominant_curvature(path: Sequence[tuple[float, float]]) -> str:
    turns: list[int] = []
    deduped = [path[0]]
    for p in path[1:]:
        if p != deduped[-1]:
            deduped.append(p)
    for i in range(1, len(deduped) - 1):
        ax, ay = deduped[i][0] - deduped[i - 1][0], deduped[i][1] - deduped[i - 1][1]
        bx, by = deduped[i + 1][0] - deduped[i][0], deduped[i + 1][1] - deduped[i][1]
        na, nb = math.hypot(ax, ay), math.hypot(bx, by)
        if na < 1e-12 or nb < 1e-12:
            continue
        cross = (ax * by - ay * bx) / (na * nb)
        turns.append(0 if abs(cross) < 1e-9 else (1 if cross > 0 else -1))
    if not turns:
        return "mixed"
    pos = sum(1 for t in turns if t > 0)
    neg = sum(1 for t in turns if t < 0)
    if pos >= 0.75 * len(turns):
        return "positive"
    if neg >= 0.75 * len(turns):
        return "negative"
    return "mixed"


def pick_hand(frames: Sequence[LandmarkFrame]) -> str:
    """Hand seen in the most frames; right wins ties."""
    left_n = sum(1 for f in frames if f.left is not None)
    right_n = sum(1 for f in frames if f.right is not None)
    return "right" if right_n >= left_n else "left"


def describe_frames(frames: Sequence[LandmarkFrame]) -> str:
    """Deterministic one-line summary of a trace for the language path."""
    if not frames:
        raise GestureError("describe_frames needs at least one frame")
    hand = pick_hand(frames)
    both = any(f.left is not None and f.right is not None for f in frames)
    path = _trace_path(frames, hand)
    if len(path) < 2:
        raise GestureError("describe_frames needs a moving fingertip path")
    xs = [p[0] for p in path]
    ys = [p[1] for p in path]
    width = max(xs) - min(xs)
    height = max(ys) - min(ys)
    aspect = width / max(height, 1e-9)
    curvature = _dominant_curvature(path)
    hands = "two hands" if both else "one hand"
    return f"closed trace, aspect {aspect:.2f}, {curvature} curvature, {hands}"
