"""Deterministic offline mixdown: replay listener actions, export a WAV.

Run:  python demos/04_offline_render.py
"""

from pathlib import Path

from common import DRUMS_2, GUITAR_1, GUITAR_2, SAMPLE_RATE, build_demo_piece, sine_stems

from slax import PcmBuffer, Session, ToggleTracks, render
from slax.session import SetLevels
from slax.wavpcm import decode_wav, encode_wav

piece = build_demo_piece()
stems = [
    PcmBuffer(samples=decode_wav(blob)[1], sample_rate=SAMPLE_RATE)
    for blob in sine_stems(piece, seconds=2.0)
]

# Drive a session and capture (frame, selection, mix) after each accepted
# action; the render later replays exactly those states.
session = Session(piece)
timeline = [(0, session.selection, session.mix)]
for frame, action in [
    (4000, ToggleTracks({GUITAR_2: True})),     # drums-1 starts automatically
    (8000, SetLevels({GUITAR_1: 30})),
    (12000, ToggleTracks({DRUMS_2: True})),
]:
    outcome = session.apply(action)
    print("frame {:>6}: {} -> revision {}".format(frame, type(action).__name__, outcome.revision))
    timeline.append((frame, session.selection, session.mix))

buffer = render(piece, stems, timeline, length_frames=len(stems[0].samples))
out = Path(__file__).parent / "mixdown.wav"
out.write_bytes(encode_wav(buffer.samples, buffer.sample_rate))
print("wrote {} ({} frames)".format(out, len(buffer.samples)))

again = render(piece, stems, timeline, length_frames=len(stems[0].samples))
print("bit-identical on re-render:", buffer.samples.tobytes() == again.samples.tobytes())
