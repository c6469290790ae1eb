import { describe, expect, it } from 'vitest';
import { committedValue } from '../src/readout';

const SDL = `scene "model" {
  component "receptacle" {
    profile: ellipse 0.15 0.15 24
    extrude: 0.08
    color: #8B4513
    count: 1
  }
  component "petal" {
    profile: ref "rose_petal"
    extrude: 0.02
    color: #00FFFF
    count: 5
    scale: 1.25
    attach: "receptacle" angle 47.0 radial offset 0.0 0.05 0.0
  }
}
`;

describe('committedValue', () => {
  it('reads the attach angle for opening_angle mode', () => {
    expect(committedValue(SDL, 'petal', 'opening_angle')).toBe(47.0);
  });

  it('reads extrude for pinch mode', () => {
    expect(committedValue(SDL, 'petal', 'pinch_length')).toBe(0.02);
    expect(committedValue(SDL, 'receptacle', 'pinch_length')).toBe(0.08);
  });

  it('reads scale when the pinch target is scale', () => {
    expect(committedValue(SDL, 'petal', 'pinch_length', 'scale')).toBe(1.25);
    // scale omitted in canonical form means identity
    expect(committedValue(SDL, 'receptacle', 'pinch_length', 'scale')).toBe(1.0);
  });

  it('returns null without a selection or for unknown components', () => {
    expect(committedValue(SDL, null, 'pinch_length')).toBeNull();
    expect(committedValue(SDL, 'ghost', 'opening_angle')).toBeNull();
    expect(committedValue(SDL, 'receptacle', 'opening_angle')).toBeNull(); // unattached
  });
});
