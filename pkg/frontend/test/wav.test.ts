import { describe, expect, it } from 'vitest';
import { downsample, encodeWav } from '../src/wav';

function header(buf: ArrayBuffer) {
  const v = new DataView(buf);
  const tag = (off: number) =>
    String.fromCharCode(v.getUint8(off), v.getUint8(off + 1), v.getUint8(off + 2), v.getUint8(off + 3));
  return {
    riff: tag(0),
    wave: tag(8),
    fmt: tag(12),
    format: v.getUint16(20, true),
    channels: v.getUint16(22, true),
    rate: v.getUint32(24, true),
    bits: v.getUint16(34, true),
    data: tag(36),
    dataBytes: v.getUint32(40, true),
  };
}

describe('encodeWav', () => {
  it('writes a mono 16-bit PCM header', () => {
    const buf = encodeWav(new Float32Array(160), 16000);
    const h = header(buf);
    expect(h.riff).toBe('RIFF');
    expect(h.wave).toBe('WAVE');
    expect(h.fmt).toBe('fmt ');
    expect(h.data).toBe('data');
    expect(h.format).toBe(1);
    expect(h.channels).toBe(1);
    expect(h.rate).toBe(16000);
    expect(h.bits).toBe(16);
    expect(h.dataBytes).toBe(320);
    expect(buf.byteLength).toBe(44 + 320);
  });

  it('scales and clips samples', () => {
    const buf = encodeWav(new Float32Array([0, 1, -1, 2, -2, 0.5]), 16000);
    const v = new DataView(buf);
    const sample = (i: number) => v.getInt16(44 + i * 2, true);
    expect(sample(0)).toBe(0);
    expect(sample(1)).toBe(0x7fff);
    expect(sample(2)).toBe(-0x8000);
    expect(sample(3)).toBe(0x7fff); // clipped
    expect(sample(4)).toBe(-0x8000); // clipped
    expect(sample(5)).toBe(Math.trunc(0.5 * 0x7fff)); // DataView truncates

  });
});

describe('downsample', () => {
  it('halves the length for a 2:1 ratio', () => {
    const out = downsample(new Float32Array(480), 32000, 16000);
    expect(out.length).toBe(240);
  });

  it('preserves a constant signal', () => {
    const src = new Float32Array(441).fill(0.25);
    const out = downsample(src, 44100, 16000);
    expect(out.length).toBe(160);
    for (const s of out) expect(s).toBeCloseTo(0.25, 6);
  });

  it('is the identity at equal rates and refuses upsampling', () => {
    const src = new Float32Array([0.1, 0.2]);
    expect(downsample(src, 16000, 16000)).toBe(src);
    expect(() => downsample(src, 8000, 16000)).toThrow(/upsample/);
  });
});
