"""Level solving over integer per-track mix states.

Levels live in composer-declared integer bounds.  Three constraint kinds
relate them: equal levels, one level at least another, and groups whose
levels keep a constant sum.  ``solve_levels`` resolves a listener's fader
move to the feasible state with the smallest total level adjustment over
the unpinned tracks, breaking ties toward the lexicographically smallest
level tuple.  ``oracle_solve_levels`` re-derives the same answer by
exhaustive enumeration for small instances.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .model import (
    Infeasible,
    InstanceTooLarge,
    LevelBalance,
    LevelEquality,
    LevelInequality,
    MixConstraint,
    MixState,
    Piece,
    SlaxError,
    mix_constraint_tracks,
)

ORACLE_MAX_STATES = 10**7

# The listener's action: track id -> demanded level.
PinnedLevel = Mapping[int, int]


class PinOutOfBounds(SlaxError):
    """A pinned level violates that track's composer bounds.

    The UI owns clamping policy, so the solver refuses rather than clamps.
    """

    def __init__(self, track: int, level: int, lo: int, hi: int):
        super().__init__(
            "level {} for track {} outside composer bounds [{}, {}]".format(level, track, lo, hi)
        )
        self.track = track


@dataclass(frozen=True)
class MixSolution:
    """A feasible mix plus the automatic moves: (track, old, new) per
    unpinned track that differs from the reference, in track order."""

    state: MixState
    changed: tuple[tuple[int, int, int], ...]


def violated_mix_constraints(piece: Piece, state: Sequence[int]) -> tuple[int, ...]:
    """Indices of mixing constraints the state violates, ascending."""
    bad = []
    for k, c in enumerate(piece.mix_constraints):
        if isinstance(c, LevelEquality):
            ok = len({state[t] for t in c.members}) == 1
        elif isinstance(c, LevelInequality):
            ok = state[c.higher] >= state[c.lower]
        else:
            ok = sum(state[t] for t in c.members) == c.total
        if not ok:
            bad.append(k)
    return tuple(bad)


def is_level_feasible(piece: Piece, state: Sequence[int]) -> bool:
    """True iff per-track bounds and every mixing constraint hold."""
    for t, track in enumerate(piece.tracks):
        if not (track.level_min <= state[t] <= track.level_max):
            return False
    return not violated_mix_constraints(piece, state)


def _check_pins(piece: Piece, pins: PinnedLevel):
    if not pins:
        raise ValueError("pins must not be empty")
    for t, level in pins.items():
        if not (isinstance(t, int) and 0 <= t < len(piece.tracks)):
            raise ValueError("pinned track {!r} out of range".format(t))
        track = piece.tracks[t]
        if not (track.level_min <= level <= track.level_max):
            raise PinOutOfBounds(t, level, track.level_min, track.level_max)


def _constrained_tracks(piece: Piece) -> set[int]:
    out: set[int] = set()
    for c in piece.mix_constraints:
        out.update(mix_constraint_tracks(c))
    return out


class _Component:
    """One coupled group of tracks: interval domains plus its constraints.

    Bounds propagation narrows [lo, hi] domains to a fixpoint; with every
    domain a singleton, a surviving propagation pass is a full feasibility
    check.
    """

    def __init__(self, piece: Piece, tracks: list[int], constraints: list[MixConstraint],
                 targets: dict[int, int], pins: PinnedLevel):
        self.tracks = tracks
        self.pos = {t: i for i, t in enumerate(tracks)}
        self.constraints = constraints
        self.targets = [targets[t] for t in tracks]
        domains = []
        for t in tracks:
            if t in pins:
                domains.append((pins[t], pins[t]))
            else:
                domains.append((piece.tracks[t].level_min, piece.tracks[t].level_max))
        self.initial = domains
        balances = [c for c in constraints if isinstance(c, LevelBalance)]
        members = list(itertools.chain.from_iterable(b.members for b in balances))
        self.balances_disjoint = len(members) == len(set(members))
        self.balances = balances

    def propagate(self, dom: list[tuple[int, int]]) -> bool:
        """Narrow domains to bounds consistency; False on a wipeout."""
        changed = True
        while changed:
            changed = False
            for c in self.constraints:
                if isinstance(c, LevelEquality):
                    ids = [self.pos[t] for t in c.members]
                    lo = max(dom[i][0] for i in ids)
                    hi = min(dom[i][1] for i in ids)
                    if lo > hi:
                        return False
                    for i in ids:
                        if dom[i] != (lo, hi):
                            dom[i] = (lo, hi)
                            changed = True
                elif isinstance(c, LevelInequality):
                    h, l = self.pos[c.higher], self.pos[c.lower]
                    hlo, hhi = dom[h]
                    llo, lhi = dom[l]
                    if hlo < llo:
                        hlo = llo
                        changed = True
                    if lhi > hhi:
                        lhi = hhi
                        changed = True
                    if hlo > hhi or llo > lhi:
                        return False
                    dom[h] = (hlo, hhi)
                    dom[l] = (llo, lhi)
                else:
                    ids = [self.pos[t] for t in c.members]
                    sum_lo = sum(dom[i][0] for i in ids)
                    sum_hi = sum(dom[i][1] for i in ids)
                    if not (sum_lo <= c.total <= sum_hi):
                        return False
                    for i in ids:
                        lo, hi = dom[i]
                        new_lo = max(lo, c.total - (sum_hi - hi))
                        new_hi = min(hi, c.total - (sum_lo - lo))
                        if new_lo > new_hi:
                            return False
                        if (new_lo, new_hi) != (lo, hi):
                            dom[i] = (new_lo, new_hi)
                            changed = True
        return True

    def bound(self, dom: list[tuple[int, int]]) -> int:
        """Lower bound on total adjustment for any completion of ``dom``.

        Per-track distance to the nearest feasible value, plus what each
        balance group still has to move to reach its sum (summable only
        when the groups share no tracks).
        """
        total = 0
        nearest = []
        for (lo, hi), target in zip(dom, self.targets):
            v = min(max(target, lo), hi)
            nearest.append(v)
            total += abs(v - target)
        extra = 0
        for c in self.balances:
            residual = abs(c.total - sum(nearest[self.pos[t]] for t in c.members))
            extra = extra + residual if self.balances_disjoint else max(extra, residual)
        return total + extra

    def min_cost(self) -> Optional[int]:
        """Branch-and-bound for the optimal adjustment; None if infeasible."""
        best: Optional[int] = None

        def rec(pos: int, dom: list[tuple[int, int]]):
            nonlocal best
            b = self.bound(dom)
            if best is not None and b >= best:
                return
            if pos == len(self.tracks):
                best = b
                return
            lo, hi = dom[pos]
            target = self.targets[pos]
            for v in sorted(range(lo, hi + 1), key=lambda x: (abs(x - target), x)):
                nxt = list(dom)
                nxt[pos] = (v, v)
                if self.propagate(nxt):
                    rec(pos + 1, nxt)

        dom0 = list(self.initial)
        if self.propagate(dom0):
            rec(0, dom0)
        return best

    def lex_min(self, budget: int) -> Optional[list[int]]:
        """First (lexicographically smallest) assignment within ``budget``."""

        def rec(pos: int, dom: list[tuple[int, int]]) -> Optional[list[int]]:
            if self.bound(dom) > budget:
                return None
            if pos == len(self.tracks):
                return [lo for lo, _ in dom]
            lo, hi = dom[pos]
            for v in range(lo, hi + 1):
                nxt = list(dom)
                nxt[pos] = (v, v)
                if self.propagate(nxt):
                    found = rec(pos + 1, nxt)
                    if found is not None:
                        return found
            return None

        dom0 = list(self.initial)
        if not self.propagate(dom0):
            return None
        return rec(0, dom0)


def _components(piece: Piece, targets: dict[int, int], pins: PinnedLevel) -> list[_Component]:
    tracks = sorted(_constrained_tracks(piece))
    parent = {t: t for t in tracks}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in piece.mix_constraints:
        ids = mix_constraint_tracks(c)
        for a, b in zip(ids, ids[1:]):
            parent[find(a)] = find(b)

    grouped: dict[int, tuple[list[int], list[MixConstraint]]] = {}
    for t in tracks:
        grouped.setdefault(find(t), ([], []))[0].append(t)
    for c in piece.mix_constraints:
        grouped[find(mix_constraint_tracks(c)[0])][1].append(c)
    return [
        _Component(piece, members, constraints, targets, pins)
        for _, (members, constraints) in sorted(grouped.items())
    ]


def solve_levels(piece: Piece, reference: Sequence[int], pins: PinnedLevel) -> MixSolution:
    """Feasible mix nearest the reference, with the pinned levels honored.

    Distance is the summed absolute level change over unpinned tracks; ties
    go to the lexicographically smallest level tuple.  Raises PinOutOfBounds
    for a pin outside the track's bounds and Infeasible when no completion
    exists.  Unpinned tracks outside every constraint never move.
    """
    _check_pins(piece, pins)
    n = len(piece.tracks)

    # Pinned tracks count zero toward the distance, so their target is the
    # pin itself; everything else pulls toward the reference.
    targets = {t: pins.get(t, reference[t]) for t in range(n)}

    state = [int(v) for v in reference]
    for t, v in pins.items():
        state[t] = v

    for comp in _components(piece, targets, pins):
        cost = comp.min_cost()
        if cost is None:
            raise Infeasible(
                "no level assignment satisfies the pinned tracks {}".format(sorted(pins))
            )
        values = comp.lex_min(cost)
        assert values is not None, "lex search must succeed at the optimal cost"
        for t, v in zip(comp.tracks, values):
            state[t] = v

    changed = tuple(
        (t, int(reference[t]), state[t])
        for t in range(n)
        if t not in pins and state[t] != reference[t]
    )
    return MixSolution(tuple(state), changed)


def oracle_solve_levels(piece: Piece, reference: Sequence[int], pins: PinnedLevel) -> MixSolution:
    """Exhaustive reference implementation of ``solve_levels``.

    Enumerates the full domains of every unpinned track that appears in a
    mixing constraint (unconstrained unpinned tracks provably stay at the
    reference), filters with is_level_feasible, and minimizes the identical
    (distance, level tuple) key.
    """
    _check_pins(piece, pins)
    n = len(piece.tracks)
    enum_vars = sorted(t for t in _constrained_tracks(piece) if t not in pins)

    size = 1
    for t in enum_vars:
        size *= piece.tracks[t].level_max - piece.tracks[t].level_min + 1
        if size > ORACLE_MAX_STATES:
            raise InstanceTooLarge("enumeration would exceed {} states".format(ORACLE_MAX_STATES))

    template = [int(v) for v in reference]
    for t, v in pins.items():
        template[t] = v

    best_key = None
    domains = [
        range(piece.tracks[t].level_min, piece.tracks[t].level_max + 1) for t in enum_vars
    ]
    for combo in itertools.product(*domains):
        for t, v in zip(enum_vars, combo):
            template[t] = v
        state = tuple(template)
        if not is_level_feasible(piece, state):
            continue
        cost = sum(abs(state[t] - reference[t]) for t in enum_vars)
        key = (cost, state)
        if best_key is None or key < best_key:
            best_key = key
    if best_key is None:
        raise Infeasible(
            "no level assignment satisfies the pinned tracks {}".format(sorted(pins))
        )
    state = best_key[1]
    changed = tuple(
        (t, int(reference[t]), state[t])
        for t in range(n)
        if t not in pins and state[t] != reference[t]
    )
    return MixSolution(state, changed)
