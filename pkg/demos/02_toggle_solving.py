"""Stem toggling through the nearest-state solver.

The listener's click is pinned; the solver changes as few other stems as
possible to stay inside the composer's rules, or refuses outright.

Run:  python demos/02_toggle_solving.py
"""

from common import (
    DRUMS_1,
    DRUMS_2,
    DRUMS_3,
    GUITAR_1,
    GUITAR_2,
    NAMES,
    PIANO_2,
    build_demo_piece,
)

from slax import Infeasible, oracle_solve_selection, solve_selection

piece = build_demo_piece()
constraints = piece.selection_constraints


def describe(changes):
    if not changes:
        return "no automatic changes"
    return ", ".join(
        "{} {}".format(NAMES[t], "started" if on else "stopped") for t, on in changes
    )


def listen(reference, pins, label):
    print("\n== {} ==".format(label))
    try:
        solution = solve_selection(constraints, reference, pins)
    except Infeasible as e:
        print("refused:", e)
        return reference
    print("accepted:", describe(solution.changed))
    # the exhaustive oracle agrees with the search on every call
    assert oracle_solve_selection(constraints, reference, pins) == solution
    return solution.state


def state(*on):
    return tuple(i in on for i in range(9))


# guitar-1 clashes with piano-2: starting it stops the piano take
current = state(PIANO_2, DRUMS_1)
current = listen(current, {GUITAR_1: True}, "start guitar-1 while piano-2 plays")

# guitar-2 requires drum take 1: it starts automatically
current = listen(state(DRUMS_2), {GUITAR_2: True}, "start guitar-2 while drums-2 plays")

# at least one drum must play: dropping the last one brings in the nearest
# replacement (lowest-numbered take wins ties)
current = listen(state(DRUMS_1), {DRUMS_1: False}, "stop the only playing drum")

# stopping all three drums violates the group minimum outright
listen(
    state(DRUMS_1),
    {DRUMS_1: False, DRUMS_2: False, DRUMS_3: False},
    "try to silence the whole drum group",
)
