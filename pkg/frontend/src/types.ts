// Wire types mirrored from the session service. All frames are canonical
// JSON text; revisions increase strictly per session.

export interface TrackInfo {
  name: string;
  level_min: number;
  level_max: number;
  initial_selected: boolean;
  initial_level: number;
}

export interface GroupTree {
  name: string;
  children: (number | GroupTree)[];
}

export interface Manifest {
  title: string;
  sample_rate: number;
  tracks: TrackInfo[];
  group_tree: GroupTree;
  selection_constraints: unknown[];
  mix_constraints: unknown[];
}

export interface PieceDoc {
  manifest: Manifest;
  stems: string[];
}

export interface StateChanges {
  selection: [track: number, on: boolean][];
  levels: [track: number, oldLevel: number, newLevel: number][];
}

export interface EventMessage {
  type: "event" | "hello";
  revision: number;
  cause: "action" | "initial";
  selection: boolean[];
  mix: number[];
  changes: StateChanges;
}

export interface RejectedMessage {
  type: "rejected";
  revision: number;
  reason: { kind: string; message: string };
}

export interface ErrorMessage {
  type: "error";
  code: string;
  message: string;
}

export type ServerMessage = EventMessage | RejectedMessage | ErrorMessage;

export type Action =
  | { kind: "toggle"; tracks: [number, boolean][] }
  | { kind: "set_levels"; levels: [number, number][] }
  | { kind: "play" }
  | { kind: "pause" }
  | { kind: "seek"; frames: number };

export function parseServerMessage(raw: string): ServerMessage | null {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof data !== "object" || data === null) return null;
  const type = (data as { type?: unknown }).type;
  if (type === "event" || type === "hello" || type === "rejected" || type === "error") {
    return data as ServerMessage;
  }
  return null;
}
