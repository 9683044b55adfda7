"""Author a piece, validate it, lint it, and write a .slax container.

Run:  python demos/01_author_and_validate.py
"""

from pathlib import Path

from common import build_demo_piece, sine_stems

from slax import encode, lint_crossed_constraints, validate_piece
from slax.model import GroupCardinality, Piece, TrackRef

piece = build_demo_piece()
report = validate_piece(piece)
print("validation:", report.summary())
for warning in report.warnings:
    print("  warning {} at {}: {}".format(warning.code, warning.location, warning.message))

# The drums group forces a drum to play, but every level may drop to 0:
# the lint points at the silence loophole the composer probably missed.
for collision in lint_crossed_constraints(piece):
    print("  lint {}: {}".format(collision.rule, collision.explanation))

# An authoring mistake is an error, not a runtime surprise: here the group
# demands more active drums than it allows.
broken = Piece(
    piece.title, piece.sample_rate, piece.tracks, piece.group_tree,
    (GroupCardinality((TrackRef(6), TrackRef(7), TrackRef(8)), 2, 1),),
    (),
)
print("broken piece:", validate_piece(broken).summary())

out = Path(__file__).parent / "demo.slax"
out.write_bytes(encode(piece, sine_stems(piece)))
print("wrote {} ({} bytes)".format(out, out.stat().st_size))
print("try:  slax inspect {}".format(out))
print("      slax check {}".format(out))
