"""Stem-selection solving over boolean track states.

Feasibility is defined by three constraint kinds (exclusion, implication,
group cardinality) whose operands are tracks or other constraints.  A
constraint operand counts as active when any track reachable through its
reference chain is active; traversal visits each constraint at most once,
so cyclic reference graphs are fine.

``solve_selection`` answers a listener action: given the state before the
action (the reference) and the pinned assignments the listener demanded, it
finds the feasible state that honors the pins and changes as few unpinned
tracks as possible.  Ties are broken by the lexicographically smallest
change list, i.e. the earliest-index flip wins.  ``oracle_solve_selection``
is the exhaustive cross-check for small instances.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .model import (
    ConstraintOperand,
    ConstraintRef,
    Exclusion,
    Implication,
    Infeasible,
    InstanceTooLarge,
    SelectionConstraint,
    SelectionState,
    TrackRef,
    constraint_operands,
)

ORACLE_MAX_TRACKS = 20

# The listener's action: track id -> demanded on/off value.
PinnedSelection = Mapping[int, bool]


@dataclass(frozen=True)
class SelectionSolution:
    """A feasible state plus the automatic flips the solver made.

    ``changed`` lists (track, new value) for every unpinned track that
    differs from the reference, in track order; pinned tracks are the
    listener's own doing and are excluded.
    """

    state: SelectionState
    changed: tuple[tuple[int, bool], ...]


def reachable_track_sets(
    constraints: Sequence[SelectionConstraint],
) -> tuple[frozenset[int], ...]:
    """Per constraint: every track reachable by expanding operand chains."""
    sets = []
    for start in range(len(constraints)):
        tracks: set[int] = set()
        visited = {start}
        stack = [start]
        while stack:
            for op in constraint_operands(constraints[stack.pop()]):
                if isinstance(op, TrackRef):
                    tracks.add(op.track)
                elif op.constraint not in visited:
                    visited.add(op.constraint)
                    stack.append(op.constraint)
        sets.append(frozenset(tracks))
    return tuple(sets)


def operand_active(
    op: ConstraintOperand,
    state: Sequence[bool],
    constraints: Sequence[SelectionConstraint],
) -> bool:
    """Is this operand active under ``state``?

    Track operands read the state directly; constraint operands are active
    iff any reachable track is active.
    """
    if isinstance(op, TrackRef):
        return bool(state[op.track])
    reach = reachable_track_sets(constraints)
    return any(state[t] for t in reach[op.constraint])


def _holds(
    constraint: SelectionConstraint,
    reach: Sequence[frozenset[int]],
    state: Sequence[bool],
) -> bool:
    def active(op: ConstraintOperand) -> bool:
        if isinstance(op, TrackRef):
            return bool(state[op.track])
        return any(state[t] for t in reach[op.constraint])

    if isinstance(constraint, Exclusion):
        return not (active(constraint.a) and active(constraint.b))
    if isinstance(constraint, Implication):
        return active(constraint.consequent) or not active(constraint.antecedent)
    count = sum(1 for m in constraint.members if active(m))
    return constraint.min_active <= count <= constraint.max_active


def violated_constraints(
    constraints: Sequence[SelectionConstraint],
    state: Sequence[bool],
) -> tuple[int, ...]:
    """Indices of constraints the state violates, ascending."""
    reach = reachable_track_sets(constraints)
    return tuple(
        j for j, c in enumerate(constraints) if not _holds(c, reach, state)
    )


def is_feasible(
    constraints: Sequence[SelectionConstraint],
    state: Sequence[bool],
) -> bool:
    """True iff the state satisfies every selection constraint."""
    return not violated_constraints(constraints, state)


def _check_pins(pins: PinnedSelection, n: int):
    if not pins:
        raise ValueError("pins must not be empty")
    for t, v in pins.items():
        if not (isinstance(t, int) and 0 <= t < n):
            raise ValueError("pinned track {!r} out of range".format(t))
        if not isinstance(v, bool):
            raise ValueError("pin for track {} must be a bool".format(t))


def _op3(
    op: ConstraintOperand,
    assign: list[Optional[bool]],
    reach: Sequence[frozenset[int]],
) -> Optional[bool]:
    """Three-valued operand activity under a partial assignment."""
    if isinstance(op, TrackRef):
        return assign[op.track]
    unknown = False
    for t in reach[op.constraint]:
        v = assign[t]
        if v:
            return True
        if v is None:
            unknown = True
    return None if unknown else False


def _may_hold(
    constraint: SelectionConstraint,
    assign: list[Optional[bool]],
    reach: Sequence[frozenset[int]],
) -> bool:
    """False iff the constraint is violated under every completion."""
    if isinstance(constraint, Exclusion):
        return not (
            _op3(constraint.a, assign, reach) is True
            and _op3(constraint.b, assign, reach) is True
        )
    if isinstance(constraint, Implication):
        return not (
            _op3(constraint.antecedent, assign, reach) is True
            and _op3(constraint.consequent, assign, reach) is False
        )
    n_true = n_unknown = 0
    for m in constraint.members:
        v = _op3(m, assign, reach)
        if v is True:
            n_true += 1
        elif v is None:
            n_unknown += 1
    return n_true <= constraint.max_active and n_true + n_unknown >= constraint.min_active


def _components(
    n: int,
    constraints: Sequence[SelectionConstraint],
    reach: Sequence[frozenset[int]],
) -> list[tuple[list[int], list[SelectionConstraint]]]:
    """Group tracks coupled through shared constraints, plus each group's
    constraints.  Constraints whose operand chains reach no track at all are
    constant and handled by the caller."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    scopes = []
    for j, c in enumerate(constraints):
        scope: set[int] = set()
        for op in constraint_operands(c):
            if isinstance(op, TrackRef):
                scope.add(op.track)
            else:
                scope |= reach[op.constraint]
        scopes.append(scope)
        ids = sorted(scope)
        for a, b in zip(ids, ids[1:]):
            parent[find(a)] = find(b)

    groups: dict[int, tuple[list[int], list[SelectionConstraint]]] = {}
    for j, c in enumerate(constraints):
        if not scopes[j]:
            continue
        root = find(next(iter(scopes[j])))
        groups.setdefault(root, ([], []))[1].append(c)
    for t in range(n):
        root = find(t)
        if root in groups:
            groups[root][0].append(t)
    return [groups[r] for r in sorted(groups)]


def _solve_component(
    tracks: list[int],
    comp_constraints: list[SelectionConstraint],
    reach: Sequence[frozenset[int]],
    reference: Sequence[bool],
    pins: PinnedSelection,
    assign: list[Optional[bool]],
) -> dict[int, bool]:
    """Minimal-flip assignment for one coupled track group.

    Iterative deepening on the flip budget; within a budget the DFS tries
    the flipped value first at each track, so the first full assignment
    found carries the lexicographically smallest change list among all
    minimum-flip solutions.
    """
    unpinned = [t for t in tracks if t not in pins]

    def dfs(pos: int, flips_left: int) -> Optional[dict[int, bool]]:
        if pos == len(unpinned):
            return {t: assign[t] for t in unpinned}  # type: ignore[misc]
        t = unpinned[pos]
        ref_val = bool(reference[t])
        candidates = (not ref_val, ref_val) if flips_left > 0 else (ref_val,)
        for value in candidates:
            assign[t] = value
            if all(_may_hold(c, assign, reach) for c in comp_constraints):
                found = dfs(pos + 1, flips_left - (value != ref_val))
                if found is not None:
                    assign[t] = None
                    return found
            assign[t] = None
        return None

    if all(_may_hold(c, assign, reach) for c in comp_constraints):
        for budget in range(len(unpinned) + 1):
            found = dfs(0, budget)
            if found is not None:
                return found
    raise Infeasible(
        "no state satisfies the pinned tracks {}".format(sorted(pins))
    )


def solve_selection(
    constraints: Sequence[SelectionConstraint],
    reference: Sequence[bool],
    pins: PinnedSelection,
) -> SelectionSolution:
    """Feasible state nearest the reference, with the pins honored.

    Nearest means the fewest unpinned tracks changed (the pins themselves
    are free: the listener's action takes priority).  Among equally near
    states the lexicographically smallest change list wins.  Raises
    Infeasible when no feasible state agrees with the pins.
    """
    n = len(reference)
    _check_pins(pins, n)
    reach = reachable_track_sets(constraints)

    assign: list[Optional[bool]] = [None] * n
    for t, v in pins.items():
        assign[t] = v

    # Constraints that reach no track never change truth value; reject now
    # if one can never hold (e.g. a cardinality minimum over dead operands).
    for c in constraints:
        if all(
            (isinstance(op, ConstraintRef) and not reach[op.constraint])
            for op in constraint_operands(c)
        ) and not _may_hold(c, [None] * n, reach):
            raise Infeasible("constraint {!r} can never be satisfied".format(c))

    state = list(bool(v) for v in reference)
    for t, v in pins.items():
        state[t] = v

    for tracks, comp_constraints in _components(n, constraints, reach):
        solved = _solve_component(tracks, comp_constraints, reach, reference, pins, assign)
        for t, v in solved.items():
            state[t] = v
            assign[t] = v

    changed = tuple(
        (t, state[t]) for t in range(n) if t not in pins and state[t] != bool(reference[t])
    )
    return SelectionSolution(tuple(state), changed)


def oracle_solve_selection(
    constraints: Sequence[SelectionConstraint],
    reference: Sequence[bool],
    pins: PinnedSelection,
) -> SelectionSolution:
    """Exhaustive reference implementation of ``solve_selection``.

    Enumerates every assignment, filters by pins and feasibility, and takes
    the minimum of the identical (distance, change list) key.  Only for
    small instances; raises InstanceTooLarge past 20 tracks.
    """
    n = len(reference)
    if n > ORACLE_MAX_TRACKS:
        raise InstanceTooLarge("{} tracks is past the 2^{} enumeration bound".format(n, ORACLE_MAX_TRACKS))
    _check_pins(pins, n)
    reach = reachable_track_sets(constraints)

    best_key = None
    best: Optional[SelectionSolution] = None
    for bits in itertools.product((False, True), repeat=n):
        if any(bits[t] != v for t, v in pins.items()):
            continue
        if not all(_holds(c, reach, bits) for c in constraints):
            continue
        changed = tuple(
            (t, bits[t]) for t in range(n) if t not in pins and bits[t] != bool(reference[t])
        )
        key = (len(changed), changed, bits)
        if best_key is None or key < best_key:
            best_key = key
            best = SelectionSolution(bits, changed)
    if best is None:
        raise Infeasible("no state satisfies the pinned tracks {}".format(sorted(pins)))
    return best
