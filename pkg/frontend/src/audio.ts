// Client-side stem playback: one persistent gain node per stem feeding the
// destination, sources recreated on every transport start. The server
// never mixes audio; this graph is the listener's local mirror of the
// session state.

import { gainOf } from "./gain.js";

export class StemMixer {
  private ctx: AudioContext;
  private gains: GainNode[] = [];
  private sources: AudioBufferSourceNode[] | null = null;
  private buffers: AudioBuffer[] = [];
  private startedAt = 0;
  private offset = 0;

  constructor(ctx?: AudioContext) {
    this.ctx = ctx ?? new AudioContext();
  }

  async load(stemUrls: string[]): Promise<void> {
    this.buffers = await Promise.all(stemUrls.map(async (url) => {
      const response = await fetch(url);
      return this.ctx.decodeAudioData(await response.arrayBuffer());
    }));
    this.gains = this.buffers.map(() => {
      const gain = this.ctx.createGain();
      gain.gain.value = 0;
      gain.connect(this.ctx.destination);
      return gain;
    });
  }

  applyState(selection: boolean[], mix: number[]): void {
    this.gains.forEach((gain, i) => {
      gain.gain.value = selection[i] ? gainOf(mix[i] ?? 0) : 0;
    });
  }

  get playing(): boolean {
    return this.sources !== null;
  }

  play(): void {
    if (this.sources !== null) return;
    void this.ctx.resume();
    this.sources = this.buffers.map((buffer, i) => {
      const source = this.ctx.createBufferSource();
      source.buffer = buffer;
      source.loop = true;
      source.connect(this.gains[i]!);
      source.start(0, this.offset % buffer.duration);
      return source;
    });
    this.startedAt = this.ctx.currentTime;
  }

  pause(): void {
    if (this.sources === null) return;
    for (const source of this.sources) {
      try {
        source.stop();
      } catch {
        // already ended
      }
    }
    this.offset += this.ctx.currentTime - this.startedAt;
    this.sources = null;
  }
}
