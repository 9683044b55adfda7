// Trailing-edge throttle for fader drags: at most one send per interval,
// and the last value always goes out. 50 ms keeps a drag under 20
// messages per second.

export const FADER_INTERVAL_MS = 50;

export function makeThrottle<T>(
  send: (value: T) => void,
  intervalMs: number = FADER_INTERVAL_MS,
): (value: T) => void {
  let lastSent = -Infinity;
  let timer: ReturnType<typeof setTimeout> | null = null;
  let queued: { value: T } | null = null;

  const flush = () => {
    timer = null;
    if (queued !== null) {
      const { value } = queued;
      queued = null;
      lastSent = Date.now();
      send(value);
    }
  };

  return (value: T) => {
    const now = Date.now();
    if (timer === null && now - lastSent >= intervalMs) {
      lastSent = now;
      send(value);
      return;
    }
    queued = { value };
    if (timer === null) {
      timer = setTimeout(flush, Math.max(0, intervalMs - (now - lastSent)));
    }
  };
}
