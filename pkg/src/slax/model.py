"""Core domain model: tracks, the group tree, constraints, states, validation.

Everything here is immutable value data.  A ``Piece`` bundles the composer's
tracks with two constraint families: selection constraints (which stems may
play together) and mixing constraints (how their levels relate).  States are
plain tuples, one slot per track, indexed by track id.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

# Track ids are dense non-negative integers, 0..n-1 within a piece.
TrackId = int

# One boolean per track: is the stem currently audible.
SelectionState = tuple[bool, ...]

# One integer level per track, each within that track's composer bounds.
MixState = tuple[int, ...]

LEVEL_FLOOR = 0
LEVEL_CEIL = 100


class SlaxError(Exception):
    """Base class for all errors raised by this library."""


class PieceInvalid(SlaxError):
    """An operation needed a valid piece but validation reported errors."""

    def __init__(self, report: "ValidationReport"):
        super().__init__("piece failed validation: " + report.summary())
        self.report = report


class Infeasible(SlaxError):
    """No feasible state agrees with the pinned listener action."""


class InstanceTooLarge(SlaxError):
    """An exhaustive oracle refused an instance beyond its enumeration bound."""


@dataclass(frozen=True)
class Track:
    """One independently stored stem plus its composer-set level bounds.

    ``audio_ref`` is the payload slot in the container; in format v1 it must
    equal the track id (payloads are stored in track order), and it defaults
    to the id when omitted.
    """

    id: TrackId
    name: str
    level_min: int = LEVEL_FLOOR
    level_max: int = LEVEL_CEIL
    initial_selected: bool = False
    initial_level: int = LEVEL_CEIL
    audio_ref: int | None = None

    def __post_init__(self):
        if self.audio_ref is None:
            object.__setattr__(self, "audio_ref", self.id)


@dataclass(frozen=True)
class GroupNode:
    """Presentation tree node: children are track ids or nested groups.

    The tree is how a player displays the piece; it carries no constraint
    semantics of its own.
    """

    name: str
    children: tuple[Union[TrackId, "GroupNode"], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def track_ids(self) -> Iterator[TrackId]:
        """All track ids in this subtree, in display order."""
        for child in self.children:
            if isinstance(child, GroupNode):
                yield from child.track_ids()
            else:
                yield child


@dataclass(frozen=True)
class TrackRef:
    track: TrackId


@dataclass(frozen=True)
class ConstraintRef:
    """Reference to another selection constraint by list index.

    Reference chains may form cycles; activity evaluation bounds traversal
    with a visited set, so cycles are legal input.
    """

    constraint: int


ConstraintOperand = Union[TrackRef, ConstraintRef]


@dataclass(frozen=True)
class Exclusion:
    """``a`` and ``b`` must never be active simultaneously."""

    a: ConstraintOperand
    b: ConstraintOperand


@dataclass(frozen=True)
class Implication:
    """If ``antecedent`` is active, ``consequent`` must be active."""

    antecedent: ConstraintOperand
    consequent: ConstraintOperand


@dataclass(frozen=True)
class GroupCardinality:
    """Between ``min_active`` and ``max_active`` members active at once."""

    members: tuple[ConstraintOperand, ...]
    min_active: int
    max_active: int

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))


SelectionConstraint = Union[Exclusion, Implication, GroupCardinality]


@dataclass(frozen=True)
class LevelEquality:
    """All member tracks hold an equal level."""

    members: tuple[TrackId, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))


@dataclass(frozen=True)
class LevelInequality:
    """level(higher) >= level(lower); non-strict."""

    higher: TrackId
    lower: TrackId


@dataclass(frozen=True)
class LevelBalance:
    """Member levels always total exactly ``total``."""

    members: tuple[TrackId, ...]
    total: int

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))


MixConstraint = Union[LevelEquality, LevelInequality, LevelBalance]


@dataclass(frozen=True)
class Piece:
    """A full composition: tracks, presentation tree, and constraint set."""

    title: str
    sample_rate: int
    tracks: tuple[Track, ...]
    group_tree: GroupNode
    selection_constraints: tuple[SelectionConstraint, ...] = ()
    mix_constraints: tuple[MixConstraint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tracks", tuple(self.tracks))
        object.__setattr__(self, "selection_constraints", tuple(self.selection_constraints))
        object.__setattr__(self, "mix_constraints", tuple(self.mix_constraints))


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str
    location: str


@dataclass(frozen=True)
class ValidationReport:
    """Validation outcome; ``errors`` empty iff the piece is well formed
    and its initial state is feasible."""

    errors: tuple[ValidationIssue, ...] = ()
    warnings: tuple[ValidationIssue, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors

    def summary(self) -> str:
        if self.ok:
            return "ok ({} warnings)".format(len(self.warnings))
        listed = "; ".join(
            "{} at {}".format(e.code, e.location) for e in self.errors[:4]
        )
        more = "" if len(self.errors) <= 4 else " (+{} more)".format(len(self.errors) - 4)
        return "{} errors: {}{}".format(len(self.errors), listed, more)


def constraint_operands(constraint: SelectionConstraint) -> tuple[ConstraintOperand, ...]:
    """The operand list of a selection constraint, in declaration order."""
    if isinstance(constraint, Exclusion):
        return (constraint.a, constraint.b)
    if isinstance(constraint, Implication):
        return (constraint.antecedent, constraint.consequent)
    return constraint.members


def mix_constraint_tracks(constraint: MixConstraint) -> tuple[TrackId, ...]:
    """The track ids a mixing constraint talks about."""
    if isinstance(constraint, LevelInequality):
        return (constraint.higher, constraint.lower)
    return constraint.members


def validate_piece(piece: Piece) -> ValidationReport:
    """Check every structural invariant of a piece plus initial feasibility.

    Returns an error per violated invariant and warnings for suspicious but
    legal authoring (tracks no constraint mentions, vacuous cardinality
    ranges).  Pure and deterministic: issues are sorted by (code, location).
    The initial-state feasibility check only runs once the piece is
    structurally sound, so a broken reference never masks the real error.
    """
    errors: list[ValidationIssue] = []
    warnings: list[ValidationIssue] = []
    n = len(piece.tracks)

    def err(code: str, message: str, location: str):
        errors.append(ValidationIssue(code, message, location))

    def warn(code: str, message: str, location: str):
        warnings.append(ValidationIssue(code, message, location))

    if n == 0:
        err("NO_TRACKS", "piece declares no tracks", "tracks")
    if piece.sample_rate <= 0:
        err("SAMPLE_RATE", "sample rate must be positive", "sample_rate")

    for i, track in enumerate(piece.tracks):
        loc = "tracks[{}]".format(i)
        if track.id != i:
            err("TRACK_ID_SEQUENCE",
                "track at position {} has id {}; ids must be dense 0..n-1".format(i, track.id), loc)
        if track.audio_ref != i:
            err("AUDIO_REF_MISMATCH",
                "audio_ref {} != track index {}; v1 stores payloads in track order".format(track.audio_ref, i),
                loc)
        if not (LEVEL_FLOOR <= track.level_min <= track.level_max <= LEVEL_CEIL):
            err("LEVEL_RANGE",
                "level bounds [{}, {}] must satisfy 0 <= min <= max <= 100".format(
                    track.level_min, track.level_max), loc)
        elif not (track.level_min <= track.initial_level <= track.level_max):
            err("INITIAL_LEVEL_RANGE",
                "initial level {} outside [{}, {}]".format(
                    track.initial_level, track.level_min, track.level_max), loc)

    # Group tree: every track id exactly once.
    seen: dict[int, int] = {}
    for tid in piece.group_tree.track_ids():
        if not isinstance(tid, int) or isinstance(tid, bool) or not (0 <= tid < n):
            err("TREE_TRACK_UNKNOWN", "group tree leaf {!r} is not a track id".format(tid), "group_tree")
            continue
        seen[tid] = seen.get(tid, 0) + 1
    for tid, count in sorted(seen.items()):
        if count > 1:
            err("TREE_TRACK_DUPLICATE", "track {} appears {} times in the group tree".format(tid, count),
                "group_tree")
    for tid in range(n):
        if tid not in seen:
            err("TREE_TRACK_MISSING", "track {} missing from the group tree".format(tid), "group_tree")

    n_sel = len(piece.selection_constraints)

    def check_operand(op: ConstraintOperand, loc: str) -> bool:
        if isinstance(op, TrackRef):
            if not (0 <= op.track < n):
                err("OPERAND_TRACK_RANGE", "operand references track {}".format(op.track), loc)
                return False
        elif isinstance(op, ConstraintRef):
            if not (0 <= op.constraint < n_sel):
                err("OPERAND_CONSTRAINT_RANGE",
                    "operand references constraint {}".format(op.constraint), loc)
                return False
        else:
            err("OPERAND_TYPE", "operand {!r} is neither track nor constraint".format(op), loc)
            return False
        return True

    referenced: set[int] = set()
    for j, constraint in enumerate(piece.selection_constraints):
        loc = "selection_constraints[{}]".format(j)
        for op in constraint_operands(constraint):
            if check_operand(op, loc) and isinstance(op, TrackRef):
                referenced.add(op.track)
        if isinstance(constraint, GroupCardinality):
            size = len(constraint.members)
            if size == 0:
                err("CARDINALITY_MEMBERS", "group constraint has no members", loc)
            elif not (0 <= constraint.min_active <= constraint.max_active <= size):
                err("CARDINALITY_RANGE",
                    "bounds [{}, {}] invalid for {} members".format(
                        constraint.min_active, constraint.max_active, size), loc)
            elif constraint.min_active == 0 and constraint.max_active == size:
                warn("VACUOUS_CARDINALITY",
                     "bounds [0, {}] never constrain anything".format(size), loc)

    for k, constraint in enumerate(piece.mix_constraints):
        loc = "mix_constraints[{}]".format(k)
        tracks = mix_constraint_tracks(constraint)
        ids_ok = True
        for tid in tracks:
            if not (0 <= tid < n):
                err("MIX_TRACK_RANGE", "mixing constraint references track {}".format(tid), loc)
                ids_ok = False
            else:
                referenced.add(tid)
        if isinstance(constraint, LevelInequality):
            if constraint.higher == constraint.lower:
                err("MIX_MEMBERS", "inequality needs two distinct tracks", loc)
        elif len(set(tracks)) < 2:
            err("MIX_MEMBERS", "constraint needs at least 2 distinct tracks", loc)
        if isinstance(constraint, LevelBalance) and ids_ok:
            lo = sum(piece.tracks[t].level_min for t in constraint.members)
            hi = sum(piece.tracks[t].level_max for t in constraint.members)
            if not (lo <= constraint.total <= hi):
                err("BALANCE_SUM_RANGE",
                    "sum {} unreachable within member bounds [{}, {}]".format(
                        constraint.total, lo, hi), loc)

    # Initial feasibility, checked by direct evaluation once the structure
    # is sound enough to evaluate at all.
    if not errors:
        from . import mixing, selection

        sel0 = tuple(t.initial_selected for t in piece.tracks)
        mix0 = tuple(t.initial_level for t in piece.tracks)
        for j in selection.violated_constraints(piece.selection_constraints, sel0):
            err("INITIAL_STATE_INFEASIBLE",
                "initial selection violates this constraint",
                "selection_constraints[{}]".format(j))
        for k in mixing.violated_mix_constraints(piece, mix0):
            err("INITIAL_STATE_INFEASIBLE",
                "initial levels violate this constraint",
                "mix_constraints[{}]".format(k))

    for tid in range(n):
        if tid not in referenced:
            warn("UNREFERENCED_TRACK",
                 "track {} appears in no constraint".format(tid), "tracks[{}]".format(tid))

    def order(issue: ValidationIssue):
        return (issue.code, issue.location)

    return ValidationReport(tuple(sorted(errors, key=order)), tuple(sorted(warnings, key=order)))


def initial_state(piece: Piece) -> tuple[SelectionState, MixState]:
    """Gather the composer's initial selection and levels, in track order.

    Raises PieceInvalid if the piece does not validate; a session must never
    start from an infeasible state.
    """
    report = validate_piece(piece)
    if not report.ok:
        raise PieceInvalid(report)
    return (
        tuple(t.initial_selected for t in piece.tracks),
        tuple(t.initial_level for t in piece.tracks),
    )
