import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { FADER_INTERVAL_MS, makeThrottle } from "../src/throttle.js";

describe("makeThrottle", () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });
  afterEach(() => {
    vi.useRealTimers();
  });

  it("sends the first value immediately", () => {
    const sent: number[] = [];
    const push = makeThrottle<number>((v) => sent.push(v));
    push(10);
    expect(sent).toEqual([10]);
  });

  it("coalesces a burst to the trailing value", () => {
    const sent: number[] = [];
    const push = makeThrottle<number>((v) => sent.push(v));
    for (let v = 0; v <= 30; v++) push(v);
    expect(sent).toEqual([0]);
    vi.advanceTimersByTime(FADER_INTERVAL_MS);
    expect(sent).toEqual([0, 30]);
  });

  it("never exceeds twenty sends per second under a continuous drag", () => {
    const stamps: number[] = [];
    const push = makeThrottle<number>(() => stamps.push(Date.now()));
    // a 1-second drag emitting a value every 5 ms
    for (let ms = 0; ms < 1000; ms += 5) {
      push(ms);
      vi.advanceTimersByTime(5);
    }
    // spacing of at least the interval bounds any one-second window at 20
    for (let i = 1; i < stamps.length; i++) {
      expect(stamps[i]! - stamps[i - 1]!).toBeGreaterThanOrEqual(FADER_INTERVAL_MS);
    }
    expect(stamps.length).toBeGreaterThan(10);
    expect(stamps.length).toBeLessThanOrEqual(21);
  });

  it("always delivers the final value of a drag", () => {
    const sent: number[] = [];
    const push = makeThrottle<number>((v) => sent.push(v));
    push(1);
    push(2);
    push(3);
    vi.advanceTimersByTime(FADER_INTERVAL_MS * 2);
    expect(sent.at(-1)).toBe(3);
  });
});
