// Wire protocol for the d3 session service. The studio never edits the
// model locally: it sends these messages and re-renders from `scene` replies.

export interface MeshEntry {
  id: string;
  positions: number[]; // flat xyz, length % 3 == 0
  indices: number[]; // flat triangles, length % 3 == 0
  color: string; // #RRGGBB
  transform: number[]; // 16 floats, row-major
}

export interface SceneMessage {
  type: 'scene';
  revision: number;
  sdl: string;
  mesh: MeshEntry[];
  stage: string;
  selection: string | null;
}

export interface AckMessage {
  type: 'ack';
  for: string;
}

export interface ErrorMessage {
  type: 'error';
  code: string;
  message: string;
}

export type ServerMessage = SceneMessage | AckMessage | ErrorMessage;

export type GestureMode = 'pinch_length' | 'opening_angle' | 'trace';

export interface HandPoints {
  thumb_tip: [number, number, number];
  thumb_ip: [number, number, number];
  thumb_mcp: [number, number, number];
  index_tip: [number, number, number];
  index_dip: [number, number, number];
  index_pip: [number, number, number];
  index_mcp: [number, number, number];
}

export interface LandmarkFrame {
  timestamp_ms: number;
  left?: HandPoints;
  right?: HandPoints;
}

export type ClientMessage =
  | { type: 'transcript'; text: string }
  | { type: 'audio'; wav_base64: string }
  | { type: 'gesture_frames'; mode: GestureMode; frames: LandmarkFrame[] }
  | { type: 'select'; component: string | null }
  | { type: 'set_stage'; stage: string }
  | { type: 'set_unit_scale'; meters_per_unit: number }
  | { type: 'undo' }
  | { type: 'redo' };

function isFiniteArray(v: unknown, len?: number): v is number[] {
  if (!Array.isArray(v)) return false;
  if (len !== undefined && v.length !== len) return false;
  return v.every((x) => typeof x === 'number' && Number.isFinite(x));
}

export function isMeshEntry(v: unknown): v is MeshEntry {
  if (typeof v !== 'object' || v === null) return false;
  const e = v as Record<string, unknown>;
  return (
    typeof e.id === 'string' &&
    isFiniteArray(e.positions) &&
    (e.positions as number[]).length % 3 === 0 &&
    isFiniteArray(e.indices) &&
    (e.indices as number[]).length % 3 === 0 &&
    typeof e.color === 'string' &&
    /^#[0-9A-Fa-f]{6}$/.test(e.color) &&
    isFiniteArray(e.transform, 16)
  );
}

export function parseServerMessage(raw: string): ServerMessage | null {
  let doc: unknown;
  try {
    doc = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof doc !== 'object' || doc === null) return null;
  const m = doc as Record<string, unknown>;
  if (m.type === 'ack' && typeof m.for === 'string') {
    return { type: 'ack', for: m.for };
  }
  if (m.type === 'error' && typeof m.code === 'string' && typeof m.message === 'string') {
    return { type: 'error', code: m.code, message: m.message };
  }
  if (
    m.type === 'scene' &&
    typeof m.revision === 'number' &&
    Number.isInteger(m.revision) &&
    typeof m.sdl === 'string' &&
    typeof m.stage === 'string' &&
    (m.selection === null || typeof m.selection === 'string') &&
    Array.isArray(m.mesh) &&
    m.mesh.every(isMeshEntry)
  ) {
    return {
      type: 'scene',
      revision: m.revision,
      sdl: m.sdl,
      mesh: m.mesh as MeshEntry[],
      stage: m.stage,
      selection: m.selection as string | null,
    };
  }
  return null;
}
