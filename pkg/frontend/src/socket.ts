// Thin session socket: sends actions, hands parsed frames to the reducer
// owner. The WebSocket constructor is injectable so tests can drive the
// client without a browser.

import type { Action, ServerMessage } from "./types.js";
import { parseServerMessage } from "./types.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: ((ev: unknown) => void) | null;
  onopen: ((ev: unknown) => void) | null;
}

export interface SessionSocketOptions {
  url: string;
  onMessage: (message: ServerMessage) => void;
  onClose?: () => void;
  factory?: (url: string) => SocketLike;
}

export class SessionSocket {
  private ws: SocketLike;

  constructor(options: SessionSocketOptions) {
    const factory = options.factory ?? ((url: string) => new WebSocket(url) as SocketLike);
    this.ws = factory(options.url);
    this.ws.onmessage = (ev) => {
      if (typeof ev.data !== "string") return;
      const message = parseServerMessage(ev.data);
      if (message === null) {
        console.warn("ignoring malformed frame", ev.data);
        return;
      }
      options.onMessage(message);
    };
    this.ws.onclose = () => options.onClose?.();
  }

  sendAction(action: Action): void {
    this.ws.send(JSON.stringify({ type: "action", action }));
  }

  close(): void {
    this.ws.close();
  }
}

export function sessionUrl(location: { protocol: string; host: string }): string {
  const scheme = location.protocol === "https:" ? "wss:" : "ws:";
  return `${scheme}//${location.host}/session`;
}
