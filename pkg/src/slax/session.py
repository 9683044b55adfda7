"""Live playback sessions: listener actions resolved through the solvers.

A session owns the only mutable state in the library.  Every toggle or
fader action goes through the matching solver with the current state as the
reference; either the solver's answer replaces the state atomically and the
outcome lists the automatic changes, or the action is rejected and the
session is untouched.  Selection and mixing are solved independently, which
leaves one known blind spot: a stem the constraints force on can still be
faded to silence if its level may reach zero.  ``lint_crossed_constraints``
flags exactly that authoring mistake.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .model import (
    GroupCardinality,
    Implication,
    Infeasible,
    Piece,
    SlaxError,
    TrackRef,
    initial_state,
)
from .mixing import PinOutOfBounds, solve_levels
from .selection import solve_selection


@dataclass(frozen=True)
class ToggleTracks:
    """Turn stems on or off; possibly several at once (a whole group)."""

    tracks: dict[int, bool]


@dataclass(frozen=True)
class SetLevels:
    levels: dict[int, int]


@dataclass(frozen=True)
class TransportPlay:
    pass


@dataclass(frozen=True)
class TransportPause:
    pass


@dataclass(frozen=True)
class TransportSeek:
    frames: int


ListenerAction = Union[ToggleTracks, SetLevels, TransportPlay, TransportPause, TransportSeek]


@dataclass(frozen=True)
class Accepted:
    revision: int
    selection_changes: tuple[tuple[int, bool], ...] = ()
    level_changes: tuple[tuple[int, int, int], ...] = ()


@dataclass(frozen=True)
class Rejected:
    reason: SlaxError


ActionOutcome = Union[Accepted, Rejected]


@dataclass(frozen=True)
class CollisionWarning:
    track: int
    rule: str
    explanation: str


@dataclass
class Transport:
    playing: bool = False
    position_frames: int = 0


class Session:
    """Single-writer state machine over one piece.

    The (selection, mix) pair is feasible at all times; ``revision``
    increments exactly once per accepted action.  Callers that share a
    session across threads must serialize ``apply`` themselves.
    """

    def __init__(self, piece: Piece):
        self.piece = piece
        self.selection, self.mix = initial_state(piece)
        self.revision = 0
        self.transport = Transport()

    def apply(self, action: ListenerAction) -> ActionOutcome:
        """Resolve one listener action; never raises.

        Accepted outcomes carry the automatic changes beyond the listener's
        own pins; a rejection leaves every session field untouched.
        """
        if isinstance(action, ToggleTracks):
            try:
                solution = solve_selection(
                    self.piece.selection_constraints, self.selection, action.tracks
                )
            except (Infeasible, ValueError) as e:
                return Rejected(_as_slax_error(e))
            self.selection = solution.state
            self.revision += 1
            return Accepted(self.revision, selection_changes=solution.changed)
        if isinstance(action, SetLevels):
            try:
                solution = solve_levels(self.piece, self.mix, action.levels)
            except (Infeasible, PinOutOfBounds, ValueError) as e:
                return Rejected(_as_slax_error(e))
            self.mix = solution.state
            self.revision += 1
            return Accepted(self.revision, level_changes=solution.changed)
        if isinstance(action, TransportPlay):
            self.transport.playing = True
        elif isinstance(action, TransportPause):
            self.transport.playing = False
        elif isinstance(action, TransportSeek):
            self.transport.position_frames = max(0, action.frames)
        else:
            return Rejected(SlaxError("unknown action {!r}".format(action)))
        self.revision += 1
        return Accepted(self.revision)


def _as_slax_error(e: Exception) -> SlaxError:
    return e if isinstance(e, SlaxError) else SlaxError(str(e))


def apply_action(session: Session, action: ListenerAction) -> ActionOutcome:
    """Apply one action to the session; see Session.apply."""
    return session.apply(action)


AUDIBILITY_HOLE = "AUDIBILITY_HOLE"


def lint_crossed_constraints(piece: Piece) -> tuple[CollisionWarning, ...]:
    """Find tracks the selection constraints can force on while the mix
    bounds still allow total silence.

    A track directly named as an implication consequent, or as a member of
    a cardinality group with a minimum of one or more, may be held audible
    by the solver; if its level may drop to 0 the listener can silence it
    anyway.  One warning per affected track, sorted by track id.  This is a
    syntactic check: operands that are constraint references are not
    expanded, since they force no specific track.
    """
    forced: dict[int, str] = {}
    for c in piece.selection_constraints:
        if isinstance(c, Implication) and isinstance(c.consequent, TrackRef):
            forced.setdefault(c.consequent.track, "an implication can force it on")
        elif isinstance(c, GroupCardinality) and c.min_active >= 1:
            for m in c.members:
                if isinstance(m, TrackRef):
                    forced.setdefault(m.track, "a group minimum can force it on")
    warnings = []
    for track_id in sorted(forced):
        if piece.tracks[track_id].level_min == 0:
            warnings.append(CollisionWarning(
                track=track_id,
                rule=AUDIBILITY_HOLE,
                explanation=(
                    "track {} ({}): {}, but its level may reach 0, making it "
                    "inaudible as if stopped".format(
                        track_id, piece.tracks[track_id].name, forced[track_id]
                    )
                ),
            ))
    return tuple(warnings)
