"""Shared fixture for the demo scripts: a nine-stem piece and sine stems.

Three instruments (guitar, piano, drums) with three takes each.  The
composer's rules: guitar take 1 clashes with piano take 2 (exclusion),
guitar take 2 needs drum take 1 (implication), and one or two drum takes
must always be playing (group cardinality 1..2).
"""

import numpy as np

from slax import (
    Exclusion,
    GroupCardinality,
    GroupNode,
    Implication,
    Piece,
    Track,
    TrackRef,
)
from slax.wavpcm import encode_wav

SAMPLE_RATE = 8000

NAMES = [
    "guitar-1", "guitar-2", "guitar-3",
    "piano-1", "piano-2", "piano-3",
    "drums-1", "drums-2", "drums-3",
]

GUITAR_1, GUITAR_2, GUITAR_3 = 0, 1, 2
PIANO_1, PIANO_2, PIANO_3 = 3, 4, 5
DRUMS_1, DRUMS_2, DRUMS_3 = 6, 7, 8


def build_demo_piece(selected=(GUITAR_1, PIANO_1, DRUMS_1), mix_constraints=()):
    tracks = tuple(
        Track(id=i, name=NAMES[i], level_min=0, level_max=100,
              initial_selected=(i in selected), initial_level=80)
        for i in range(9)
    )
    tree = GroupNode("band", (
        GroupNode("guitar", (GUITAR_1, GUITAR_2, GUITAR_3)),
        GroupNode("piano", (PIANO_1, PIANO_2, PIANO_3)),
        GroupNode("drums", (DRUMS_1, DRUMS_2, DRUMS_3)),
    ))
    constraints = (
        Exclusion(TrackRef(GUITAR_1), TrackRef(PIANO_2)),
        Implication(TrackRef(GUITAR_2), TrackRef(DRUMS_1)),
        GroupCardinality((TrackRef(DRUMS_1), TrackRef(DRUMS_2), TrackRef(DRUMS_3)), 1, 2),
    )
    return Piece("demo piece", SAMPLE_RATE, tracks, tree, constraints, tuple(mix_constraints))


def sine_stems(piece, seconds=1.0):
    """One sine per stem, each instrument family an octave apart."""
    frames = int(SAMPLE_RATE * seconds)
    t = np.arange(frames)
    out = []
    for i in range(len(piece.tracks)):
        freq = 220.0 * (2 ** (i // 3)) * (1 + (i % 3) / 4)
        wave = (4000 * np.sin(2 * np.pi * freq * t / SAMPLE_RATE)).astype(np.int16)
        out.append(encode_wav(wave, SAMPLE_RATE))
    return out


def show_state(piece, selection, mix):
    rows = []
    for track in piece.tracks:
        flag = "ON " if selection[track.id] else "off"
        rows.append("  {:<9} {} level {:>3}".format(track.name, flag, mix[track.id]))
    return "\n".join(rows)
