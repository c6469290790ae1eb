import type { GestureMode, HandPoints, LandmarkFrame } from './protocol';

// Maps in-browser hand-tracker output (21 landmarks per hand, mediapipe
// numbering) onto the wire schema: 7 named thumb/index points per hand,
// 14 total with both hands up. Camera frames never leave the client.

export interface TrackedPoint {
  x: number;
  y: number;
  z: number;
}

// mediapipe hand-landmark indices
const WIRE_POINTS: Array<[keyof HandPoints, number]> = [
  ['thumb_tip', 4],
  ['thumb_ip', 3],
  ['thumb_mcp', 2],
  ['index_tip', 8],
  ['index_dip', 7],
  ['index_pip', 6],
  ['index_mcp', 5],
];

const clamp01 = (v: number) => Math.min(1, Math.max(0, v));

export function toHandPoints(landmarks: TrackedPoint[]): HandPoints {
  if (landmarks.length < 21) {
    throw new Error(`expected 21 landmarks, got ${landmarks.length}`);
  }
  const out = {} as HandPoints;
  for (const [name, idx] of WIRE_POINTS) {
    const p = landmarks[idx];
    out[name] = [clamp01(p.x), clamp01(p.y), p.z];
  }
  return out;
}

export interface BatcherOptions {
  maxFps?: number;
  batchSize?: number;
}

/**
 * Throttles tracker output to the wire rate and groups frames into
 * gesture_frames batches. Timestamps are forced strictly increasing
 * (the server rejects ties), and a mode switch flushes mid-batch so no
 * message mixes modes.
 */
export class FrameBatcher {
  private readonly minIntervalMs: number;
  private readonly batchSize: number;
  private pending: LandmarkFrame[] = [];
  private lastAcceptedMs = -Infinity;
  private lastTimestampMs = -Infinity;

  constructor(
    private mode: GestureMode,
    private emit: (mode: GestureMode, frames: LandmarkFrame[]) => void,
    opts: BatcherOptions = {},
  ) {
    this.minIntervalMs = 1000 / (opts.maxFps ?? 15);
    this.batchSize = opts.batchSize ?? 10;
  }

  get currentMode(): GestureMode {
    return this.mode;
  }

  setMode(mode: GestureMode): void {
    if (mode === this.mode) return;
    this.flush();
    this.mode = mode;
  }

  /** Feed one tracker result; returns true if the frame was accepted. */
  push(timestampMs: number, left: TrackedPoint[] | null, right: TrackedPoint[] | null): boolean {
    if (left === null && right === null) return false; // paused: no hands
    if (timestampMs - this.lastAcceptedMs < this.minIntervalMs) return false;
    this.lastAcceptedMs = timestampMs;

    const ts = Math.max(Math.round(timestampMs), this.lastTimestampMs + 1);
    this.lastTimestampMs = ts;
    const frame: LandmarkFrame = { timestamp_ms: ts };
    if (left !== null) frame.left = toHandPoints(left);
    if (right !== null) frame.right = toHandPoints(right);
    this.pending.push(frame);
    if (this.pending.length >= this.batchSize) this.flush();
    return true;
  }

  /** Send whatever is pending (end of gesture, or hands left the frame). */
  flush(): void {
    if (this.pending.length === 0) return;
    this.emit(this.mode, this.pending.splice(0));
  }
}
