"""Fader moves through the level solver: balance, equality, inequality.

Run:  python demos/03_level_balance.py
"""

from slax import (
    GroupNode,
    Infeasible,
    LevelBalance,
    LevelEquality,
    LevelInequality,
    Piece,
    PinOutOfBounds,
    Track,
    oracle_solve_levels,
    solve_levels,
)


def duo(mix, levels=(70, 30), bounds=((0, 100), (0, 100))):
    tracks = tuple(
        Track(id=i, name="stem-{}".format(i), level_min=bounds[i][0],
              level_max=bounds[i][1], initial_selected=True, initial_level=levels[i])
        for i in range(2)
    )
    return Piece("duo", 8000, tracks, GroupNode("r", (0, 1)), (), tuple(mix))


def move(piece, reference, pins, label):
    print("\n== {} ==".format(label))
    print("   before:", reference, "pin:", pins)
    try:
        solution = solve_levels(piece, reference, pins)
    except (Infeasible, PinOutOfBounds) as e:
        print("   refused: {}: {}".format(type(e).__name__, e))
        return
    print("   after: ", solution.state,
          "automatic:", [(t, "{}->{}".format(old, new)) for t, old, new in solution.changed])
    assert oracle_solve_levels(piece, reference, pins) == solution


# a balance group keeps the two stems summing to 100: pulling one down
# pushes the other up by exactly the same amount
move(duo([LevelBalance((0, 1), 100)]), (70, 30), {0: 50}, "balanced pair, drop stem 0 to 50")

# equal levels follow the pinned fader
move(duo([LevelEquality((0, 1))], levels=(40, 40)), (40, 40), {0: 55}, "equal pair, raise stem 0")

# stem 0 must stay at least as loud as stem 1
move(duo([LevelInequality(higher=0, lower=1)], levels=(60, 60)), (60, 60), {0: 50},
     "ordered pair, drop the louder stem")

# composer bounds outrank the listener: level 90 on a track capped at 80
move(duo([], bounds=((0, 80), (0, 100))), (70, 30), {0: 90}, "pin beyond the track's cap")

# a balance that cannot be completed within bounds is refused outright
move(duo([LevelBalance((0, 1), 100)], levels=(60, 40), bounds=((0, 100), (0, 40))),
     (60, 40), {0: 50}, "partner would need 50 but is capped at 40")
