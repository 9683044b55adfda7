// The level-to-amplitude map. Must stay the exact linear map the offline
// renderer uses, so what the listener hears matches exported mixdowns.

export function gainOf(level: number): number {
  if (!Number.isInteger(level) || level < 0 || level > 100) {
    throw new RangeError(`level ${level} outside 0..100`);
  }
  return level / 100;
}
