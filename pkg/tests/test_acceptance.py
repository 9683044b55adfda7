"""Acceptance suite: one test per top-level criterion, at its stated
tolerance, printing one PASS/FAIL line each (run with ``pytest -s`` to see
them).  Tolerances and budgets are pinned here, not configurable."""

from __future__ import annotations

import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

from slax.container import ContainerError, decode, encode
from slax.mixing import is_level_feasible, oracle_solve_levels, solve_levels
from slax.model import Infeasible
from slax.render import PcmBuffer, render
from slax.selection import is_feasible, oracle_solve_selection, solve_selection
from slax.session import AUDIBILITY_HOLE, Rejected, Session, ToggleTracks, lint_crossed_constraints
from slax.wavpcm import decode_wav

from generators import (
    DRUMS_1,
    DRUMS_2,
    DRUMS_3,
    GUITAR_1,
    GUITAR_2,
    PIANO_2,
    nine_stem_payloads,
    nine_stem_piece,
    random_mix_instance,
    random_payloads,
    random_piece,
    random_selection_instance,
)
from test_session import random_action, snapshot


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print("ACCEPTANCE FAIL: {}".format(name))
        raise
    print("ACCEPTANCE PASS: {}".format(name))


def test_fixture_suite_exclusion_implication_cardinality():
    """The worked nine-stem scenarios, asserted exactly, in under a second."""
    with criterion("fixture suite: exclusion, implication, group cardinality (< 1 s)"):
        start = time.perf_counter()

        session = Session(nine_stem_piece(selected=(PIANO_2, DRUMS_1)))
        outcome = session.apply(ToggleTracks({GUITAR_1: True}))
        assert outcome.selection_changes == ((PIANO_2, False),)
        assert session.selection[GUITAR_1] and not session.selection[PIANO_2]

        session = Session(nine_stem_piece(selected=(DRUMS_2,)))
        outcome = session.apply(ToggleTracks({GUITAR_2: True}))
        assert outcome.selection_changes == ((DRUMS_1, True),)
        assert session.selection[DRUMS_1]

        session = Session(nine_stem_piece(selected=(GUITAR_1, DRUMS_1)))
        before = snapshot(session)
        outcome = session.apply(
            ToggleTracks({DRUMS_1: False, DRUMS_2: False, DRUMS_3: False})
        )
        assert isinstance(outcome, Rejected)
        assert snapshot(session) == before

        # the drums invariant holds across a random action walk
        piece = nine_stem_piece(selected=(GUITAR_1, DRUMS_1))
        session = Session(piece)
        rng = random.Random(20260809)
        drums = (DRUMS_1, DRUMS_2, DRUMS_3)
        for _ in range(150):
            picked = rng.sample(range(9), rng.randint(1, 3))
            session.apply(ToggleTracks({t: rng.random() < 0.5 for t in picked}))
            active = sum(session.selection[d] for d in drums)
            assert 1 <= active <= 2

        elapsed = time.perf_counter() - start
        assert elapsed < 1.0, "fixture suite took {:.2f} s".format(elapsed)


def test_selection_oracle_equivalence_1000_instances():
    """solve_selection is byte-for-byte the exhaustive answer, 1000/1000."""
    with criterion("selection oracle equivalence: 1000 seeded instances (< 60 s)"):
        start = time.perf_counter()
        agreements = 0
        infeasible_seen = 0
        for seed in range(1000):
            constraints, reference, pins = random_selection_instance(seed)
            try:
                fast = ("solved", solve_selection(constraints, reference, pins))
            except Infeasible:
                fast = ("infeasible",)
            try:
                slow = ("solved", oracle_solve_selection(constraints, reference, pins))
            except Infeasible:
                slow = ("infeasible",)
            assert fast == slow, "divergence at seed {}".format(seed)
            agreements += 1
            if fast[0] == "infeasible":
                infeasible_seen += 1
            else:
                assert is_feasible(constraints, fast[1].state)
        elapsed = time.perf_counter() - start
        assert agreements == 1000
        assert infeasible_seen > 0, "corpus must include rejections"
        assert elapsed < 60.0, "took {:.1f} s".format(elapsed)


def test_mixing_oracle_equivalence_1000_instances():
    """solve_levels matches exhaustive enumeration on every instance."""
    with criterion("mixing oracle equivalence: 1000 seeded instances (< 60 s)"):
        start = time.perf_counter()
        for seed in range(1000):
            piece, reference, pins = random_mix_instance(seed)
            assert is_level_feasible(piece, reference)
            try:
                fast = ("solved", solve_levels(piece, reference, pins))
            except Infeasible:
                fast = ("infeasible",)
            try:
                slow = ("solved", oracle_solve_levels(piece, reference, pins))
            except Infeasible:
                slow = ("infeasible",)
            assert fast == slow, "divergence at seed {}".format(seed)
            if fast[0] == "solved":
                assert is_level_feasible(piece, fast[1].state)
        elapsed = time.perf_counter() - start
        assert elapsed < 60.0, "took {:.1f} s".format(elapsed)


def test_session_feasibility_preservation_10k_steps():
    """10k random actions across 20 random pieces: state stays feasible,
    rejections leave every field bit-identical."""
    with criterion("session feasibility: 10k random steps over 20 pieces"):
        total_steps = 0
        rejections = 0
        for piece_seed in range(20):
            piece = random_piece(piece_seed)
            session = Session(piece)
            rng = random.Random(1000 + piece_seed)
            for _ in range(500):
                before = snapshot(session)
                outcome = session.apply(random_action(rng, piece))
                if isinstance(outcome, Rejected):
                    rejections += 1
                    assert snapshot(session) == before
                else:
                    assert session.revision == before[2] + 1
                assert is_feasible(piece.selection_constraints, session.selection)
                assert is_level_feasible(piece, session.mix)
                total_steps += 1
        assert total_steps == 10_000
        assert rejections > 0, "corpus must exercise rejections"


def test_container_round_trip_and_fuzz():
    """decode∘encode is the identity on 200 pieces; 10k fuzz inputs produce
    structured errors only."""
    with criterion("container round-trip on 200 pieces + 10k-case fuzz"):
        rng = random.Random(77)
        blobs = []
        for seed in range(200):
            piece = random_piece(seed)
            payloads = random_payloads(rng, piece, max_frames=120)
            blob = encode(piece, payloads)
            back_piece, back_payloads = decode(blob)
            assert back_piece == piece
            assert back_payloads == tuple(payloads)
            assert encode(back_piece, back_payloads) == blob
            blobs.append(blob)

        survived = 0
        for case in range(10_000):
            roll = rng.random()
            if roll < 0.25:
                data = rng.randbytes(rng.randint(0, 400))
            else:
                data = bytearray(rng.choice(blobs))
                if roll < 0.75:
                    for _ in range(rng.randint(1, 10)):
                        data[rng.randrange(len(data))] = rng.randrange(256)
                else:
                    del data[rng.randint(0, len(data)):]
                data = bytes(data)
            try:
                decode(data)
                survived += 1
            except ContainerError:
                pass
            # anything else propagates and fails the criterion
        assert survived < 10_000


def test_render_determinism_and_linearity():
    """Unit gain is the identity, the two-track closed form holds, and
    repeated renders are bit-identical."""
    with criterion("render determinism + linearity"):
        piece = nine_stem_piece()
        payload_bytes = nine_stem_payloads(piece, frames=512)
        stems = [
            PcmBuffer(samples=decode_wav(b)[1], sample_rate=piece.sample_rate)
            for b in payload_bytes
        ]

        solo = tuple(i == 0 for i in range(9))
        out = render(piece, stems, [(0, solo, (100,) * 9)], 512)
        assert np.array_equal(out.samples, stems[0].samples)

        two_piece = nine_stem_piece()
        flat = [
            PcmBuffer(samples=np.full(64, 1000, np.int16), sample_rate=8000),
            PcmBuffer(samples=np.full(64, 500, np.int16), sample_rate=8000),
        ] + stems[2:]
        both = tuple(i < 2 for i in range(9))
        levels = (50, 100) + (100,) * 7
        out = render(two_piece, flat, [(0, both, levels)], 64)
        assert (out.samples == 1000).all()

        timeline = [
            (0, solo, (80,) * 9),
            (100, tuple(i in (0, 6) for i in range(9)), (80,) * 9),
            (300, tuple(i in (3, 6) for i in range(9)), (40,) * 9),
        ]
        first = render(piece, stems, timeline, 512)
        second = render(piece, stems, timeline, 512)
        assert first.samples.tobytes() == second.samples.tobytes()


def test_lint_audibility_holes():
    """Forced-on drums with a zero level floor warn once per track; raising
    the floor clears every warning."""
    with criterion("crossed-constraint lint: audibility holes"):
        warnings = lint_crossed_constraints(nine_stem_piece(level_min=0))
        assert [w.track for w in warnings] == [DRUMS_1, DRUMS_2, DRUMS_3]
        assert all(w.rule == AUDIBILITY_HOLE for w in warnings)
        assert lint_crossed_constraints(nine_stem_piece(level_min=10)) == ()
