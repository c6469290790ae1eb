import type { GestureMode } from './protocol';

// Pulls the number a gesture just drove out of the scene's program text so
// the HUD can echo the server-committed value (the UI itself never computes
// model state). Display-only; the text is re-sent verbatim nowhere.

function blockOf(sdl: string, componentId: string): string | null {
  const open = sdl.indexOf(`component "${componentId}" {`);
  if (open < 0) return null;
  const close = sdl.indexOf('}', open);
  return close < 0 ? null : sdl.slice(open, close);
}

export function committedValue(
  sdl: string,
  componentId: string | null,
  mode: GestureMode,
  pinchTarget: 'extrude' | 'scale' = 'extrude',
): number | null {
  if (componentId === null) return null;
  const block = blockOf(sdl, componentId);
  if (block === null) return null;
  if (mode === 'opening_angle') {
    const m = block.match(/attach:.*\bangle\s+(-?[\d.]+)/);
    return m ? parseFloat(m[1]) : null;
  }
  if (mode === 'pinch_length' && pinchTarget === 'scale') {
    const m = block.match(/scale:\s+(-?[\d.]+)/);
    return m ? parseFloat(m[1]) : 1.0;
  }
  const m = block.match(/extrude:\s+(-?[\d.]+)/);
  return m ? parseFloat(m[1]) : null;
}
