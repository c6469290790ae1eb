import { describe, expect, it } from 'vitest';
import { finishRecording } from '../src/speech';

describe('finishRecording', () => {
  it('returns null for an empty press-release (no message sent)', () => {
    expect(finishRecording([], 48000)).toBeNull();
    expect(finishRecording([new Float32Array(0)], 48000)).toBeNull();
  });

  it('produces one base64 WAV for a real recording', () => {
    const chunks = [new Float32Array(4800).fill(0.1), new Float32Array(4800).fill(-0.1)];
    const b64 = finishRecording(chunks, 48000);
    expect(b64).not.toBeNull();
    const bytes = Buffer.from(b64!, 'base64');
    expect(bytes.subarray(0, 4).toString('ascii')).toBe('RIFF');
    // 9600 samples at 48k -> 3200 at 16k -> 6400 data bytes + 44 header
    expect(bytes.length).toBe(44 + 6400);
  });
});
