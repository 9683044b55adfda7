// Pure client-side mirror of the shared session. The model only ever
// changes in response to a server frame: no optimistic updates, so the
// controls can never display an infeasible state. Stale events (revision
// at or below the mirror's) are dropped.

import type { Manifest, ServerMessage } from "./types.js";

export interface Notice {
  id: number;
  kind: "auto" | "rejected" | "error";
  text: string;
}

export interface ClientModel {
  manifest: Manifest;
  revision: number;
  selection: boolean[];
  mix: number[];
  pending: boolean;
  notices: Notice[];
}

const MAX_NOTICES = 6;
let noticeSerial = 0;

export function initialModel(manifest: Manifest): ClientModel {
  return {
    manifest,
    revision: -1,
    selection: manifest.tracks.map((t) => t.initial_selected),
    mix: manifest.tracks.map((t) => t.initial_level),
    pending: false,
    notices: [],
  };
}

export function markPending(model: ClientModel): ClientModel {
  return { ...model, pending: true };
}

function pushNotices(model: ClientModel, fresh: Notice[]): Notice[] {
  return [...fresh, ...model.notices].slice(0, MAX_NOTICES);
}

function trackName(model: ClientModel, track: number): string {
  return model.manifest.tracks[track]?.name ?? `track ${track}`;
}

export function reduceEvent(model: ClientModel, message: ServerMessage): ClientModel {
  switch (message.type) {
    case "hello":
    case "event": {
      if (message.revision <= model.revision) {
        return model; // stale or duplicate delivery
      }
      const fresh: Notice[] = [];
      for (const [track, on] of message.changes.selection) {
        fresh.push({
          id: noticeSerial++,
          kind: "auto",
          text: `${trackName(model, track)} ${on ? "started" : "stopped"} by a composer rule`,
        });
      }
      for (const [track, oldLevel, newLevel] of message.changes.levels) {
        fresh.push({
          id: noticeSerial++,
          kind: "auto",
          text: `${trackName(model, track)} level ${oldLevel} → ${newLevel} by a composer rule`,
        });
      }
      return {
        ...model,
        revision: message.revision,
        selection: [...message.selection],
        mix: [...message.mix],
        pending: false,
        notices: pushNotices(model, fresh),
      };
    }
    case "rejected":
      // mirrors stay authoritative; the UI re-renders from them, which
      // reverts whatever the listener tried
      return {
        ...model,
        pending: false,
        notices: pushNotices(model, [{
          id: noticeSerial++,
          kind: "rejected",
          text: `not allowed: ${message.reason.message}`,
        }]),
      };
    case "error":
      return {
        ...model,
        pending: false,
        notices: pushNotices(model, [{
          id: noticeSerial++,
          kind: "error",
          text: `protocol error ${message.code}: ${message.message}`,
        }]),
      };
  }
}
