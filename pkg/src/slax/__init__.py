"""slax: interactive multi-stem music as one constrained, playable file.

A piece bundles independently stored stems with composer-authored
constraints on which stems may play together (selection) and how loud they
may be relative to each other (mixing).  Listener actions are resolved by
finite-domain solvers to the nearest feasible state, so the music never
leaves the space the composer allowed.
"""

from .container import decode, encode
from .mixing import (
    MixSolution,
    PinOutOfBounds,
    is_level_feasible,
    oracle_solve_levels,
    solve_levels,
)
from .model import (
    ConstraintRef,
    Exclusion,
    GroupCardinality,
    GroupNode,
    Implication,
    Infeasible,
    InstanceTooLarge,
    LevelBalance,
    LevelEquality,
    LevelInequality,
    Piece,
    PieceInvalid,
    SlaxError,
    Track,
    TrackRef,
    ValidationReport,
    initial_state,
    validate_piece,
)
from .render import PcmBuffer, gain_of, render
from .selection import (
    SelectionSolution,
    is_feasible,
    operand_active,
    oracle_solve_selection,
    solve_selection,
)
from .session import (
    Accepted,
    Rejected,
    Session,
    SetLevels,
    ToggleTracks,
    TransportPause,
    TransportPlay,
    TransportSeek,
    apply_action,
    lint_crossed_constraints,
)

__version__ = "0.1.0"

__all__ = [
    "Accepted",
    "ConstraintRef",
    "Exclusion",
    "GroupCardinality",
    "GroupNode",
    "Implication",
    "Infeasible",
    "InstanceTooLarge",
    "LevelBalance",
    "LevelEquality",
    "LevelInequality",
    "MixSolution",
    "PcmBuffer",
    "Piece",
    "PieceInvalid",
    "PinOutOfBounds",
    "Rejected",
    "SelectionSolution",
    "Session",
    "SetLevels",
    "SlaxError",
    "ToggleTracks",
    "Track",
    "TrackRef",
    "TransportPause",
    "TransportPlay",
    "TransportSeek",
    "ValidationReport",
    "apply_action",
    "decode",
    "encode",
    "gain_of",
    "initial_state",
    "is_feasible",
    "is_level_feasible",
    "lint_crossed_constraints",
    "operand_active",
    "oracle_solve_levels",
    "oracle_solve_selection",
    "render",
    "solve_levels",
    "solve_selection",
    "validate_piece",
]
