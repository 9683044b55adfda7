"""Deterministic offline mixdown of stems under a timeline of states.

The level-to-gain map is linear (level/100) and all arithmetic is integer:
each active track's sample is scaled by level/100 with round-half-away-
from-zero, the scaled samples are summed, and the sum is hard-clamped to
the 16-bit range.  Renders are therefore bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .model import MixState, Piece, SelectionState, SlaxError

# (frame_offset, selection, mix): the session state from this frame on.
StateTimeline = Sequence[tuple[int, SelectionState, MixState]]


class SampleRateMismatch(SlaxError):
    pass


class EmptyTimeline(SlaxError):
    pass


@dataclass(frozen=True, eq=False)
class PcmBuffer:
    """Mono 16-bit PCM samples."""

    samples: np.ndarray
    sample_rate: int
    channels: int = 1


def gain_of(level: int) -> Fraction:
    """Exact linear amplitude for a level: level/100."""
    if not (0 <= level <= 100):
        raise ValueError("level {} outside 0..100".format(level))
    return Fraction(level, 100)


def _scale(samples: np.ndarray, level: int) -> np.ndarray:
    """samples * level/100, rounded half away from zero, in int64."""
    s = samples.astype(np.int64)
    return np.sign(s) * ((np.abs(s) * level + 50) // 100)


def render(
    piece: Piece,
    payloads: Sequence[PcmBuffer],
    timeline: StateTimeline,
    length_frames: int,
) -> PcmBuffer:
    """Mix the stems down under the given state timeline.

    At each frame the governing state is the latest timeline entry at or
    before it; a track contributes only while selected, scaled by its
    level, and zero past its own end.  Deterministic and bit-exact.
    """
    if not timeline:
        raise EmptyTimeline("timeline needs at least the frame-0 state")
    entries = list(timeline)
    if entries[0][0] != 0:
        raise ValueError("timeline must start at frame 0")
    for (a, _, _), (b, _, _) in zip(entries, entries[1:]):
        if b <= a:
            raise ValueError("timeline frame offsets must strictly increase")
    for i, payload in enumerate(payloads):
        if payload.sample_rate != piece.sample_rate:
            raise SampleRateMismatch(
                "stem {} at {} Hz, piece declares {} Hz".format(
                    i, payload.sample_rate, piece.sample_rate
                )
            )

    out = np.zeros(length_frames, dtype=np.int64)
    for which, (start, selection, mix) in enumerate(entries):
        if start >= length_frames:
            break
        end = length_frames
        if which + 1 < len(entries):
            end = min(end, entries[which + 1][0])
        for t in range(len(piece.tracks)):
            if not selection[t]:
                continue
            stem = payloads[t].samples
            chunk = stem[start:min(end, len(stem))]
            if len(chunk):
                out[start:start + len(chunk)] += _scale(chunk, mix[t])
    clipped = np.clip(out, -32768, 32767).astype(np.int16)
    return PcmBuffer(samples=clipped, sample_rate=piece.sample_rate)
