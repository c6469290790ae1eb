import { describe, expect, it } from 'vitest';
import { isMeshEntry, parseServerMessage } from '../src/protocol';

const entry = {
  id: 'petal.0',
  positions: [0, 0, 0, 1, 0, 0, 0, 1, 0],
  indices: [0, 1, 2],
  color: '#00FFFF',
  transform: [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1],
};

describe('parseServerMessage', () => {
  it('parses a scene message', () => {
    const msg = parseServerMessage(
      JSON.stringify({
        type: 'scene',
        revision: 3,
        sdl: 'scene "model" {\n}\n',
        mesh: [entry],
        stage: 'modification',
        selection: 'petal',
      }),
    );
    expect(msg).not.toBeNull();
    expect(msg!.type).toBe('scene');
    if (msg!.type === 'scene') {
      expect(msg!.revision).toBe(3);
      expect(msg!.mesh).toHaveLength(1);
    }
  });

  it('parses ack and error', () => {
    expect(parseServerMessage('{"type":"ack","for":"select"}')).toEqual({
      type: 'ack',
      for: 'select',
    });
    expect(parseServerMessage('{"type":"error","code":"bad_event","message":"x"}')).toEqual({
      type: 'error',
      code: 'bad_event',
      message: 'x',
    });
  });

  it('rejects junk', () => {
    expect(parseServerMessage('not json')).toBeNull();
    expect(parseServerMessage('[1,2]')).toBeNull();
    expect(parseServerMessage('{"type":"wat"}')).toBeNull();
    // scene with a malformed mesh entry is dropped whole
    const bad = { ...entry, transform: [1, 2, 3] };
    expect(
      parseServerMessage(
        JSON.stringify({
          type: 'scene', revision: 1, sdl: '', mesh: [bad], stage: 'generation', selection: null,
        }),
      ),
    ).toBeNull();
  });
});

describe('isMeshEntry', () => {
  it('accepts the wire shape', () => {
    expect(isMeshEntry(entry)).toBe(true);
  });

  it('rejects ragged arrays and bad colors', () => {
    expect(isMeshEntry({ ...entry, positions: [0, 0] })).toBe(false);
    expect(isMeshEntry({ ...entry, indices: [0, 1] })).toBe(false);
    expect(isMeshEntry({ ...entry, color: 'aqua' })).toBe(false);
    expect(isMeshEntry({ ...entry, positions: [0, 0, NaN] })).toBe(false);
  });
});
