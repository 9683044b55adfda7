// Wire frames recorded verbatim from the live session service running the
// nine-stem demo container (piano-2 and drums-1 initially playing).

import type { Manifest } from "../src/types.js";

export const FRAMES = {
  hello:
    '{"cause":"initial","changes":{"levels":[],"selection":[]},"mix":[80,80,80,80,80,80,80,80,80],"revision":0,"selection":[false,false,false,false,true,false,true,false,false],"type":"hello"}',
  eventToggleGuitar1:
    '{"cause":"action","changes":{"levels":[],"selection":[[4,false]]},"mix":[80,80,80,80,80,80,80,80,80],"revision":1,"selection":[true,false,false,false,false,false,true,false,false],"type":"event"}',
  rejectedStopAllDrums:
    '{"reason":{"kind":"infeasible","message":"no state satisfies the pinned tracks [6, 7, 8]"},"revision":1,"type":"rejected"}',
  errorBadAction:
    '{"code":"BAD_ACTION","message":"expected {\\"type\\": \\"action\\", \\"action\\": {...}}","type":"error"}',
  eventSetLevel:
    '{"cause":"action","changes":{"levels":[],"selection":[]},"mix":[80,80,80,80,80,80,55,80,80],"revision":2,"selection":[true,false,false,false,false,false,true,false,false],"type":"event"}',
} as const;

export const GUITAR_1 = 0;
export const PIANO_2 = 4;
export const DRUMS_1 = 6;
export const DRUMS_2 = 7;
export const DRUMS_3 = 8;

export const MANIFEST: Manifest = {
  title: "nine stems",
  sample_rate: 8000,
  tracks: [
    { name: "guitar-1", level_min: 0, level_max: 100, initial_selected: false, initial_level: 80 },
    { name: "guitar-2", level_min: 0, level_max: 100, initial_selected: false, initial_level: 80 },
    { name: "guitar-3", level_min: 0, level_max: 100, initial_selected: false, initial_level: 80 },
    { name: "piano-1", level_min: 0, level_max: 100, initial_selected: false, initial_level: 80 },
    { name: "piano-2", level_min: 0, level_max: 100, initial_selected: true, initial_level: 80 },
    { name: "piano-3", level_min: 0, level_max: 100, initial_selected: false, initial_level: 80 },
    { name: "drums-1", level_min: 0, level_max: 100, initial_selected: true, initial_level: 80 },
    { name: "drums-2", level_min: 0, level_max: 100, initial_selected: false, initial_level: 80 },
    { name: "drums-3", level_min: 0, level_max: 100, initial_selected: false, initial_level: 80 },
  ],
  group_tree: {
    name: "band",
    children: [
      { name: "guitar", children: [0, 1, 2] },
      { name: "piano", children: [3, 4, 5] },
      { name: "drums", children: [6, 7, 8] },
    ],
  },
  selection_constraints: [],
  mix_constraints: [],
};
