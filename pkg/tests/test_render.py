from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from slax.model import GroupNode, Piece, Track
from slax.render import EmptyTimeline, PcmBuffer, SampleRateMismatch, gain_of, render


def flat_piece(n, sample_rate=8000):
    tracks = tuple(
        Track(id=i, name="stem-{}".format(i), initial_selected=True, initial_level=100)
        for i in range(n)
    )
    return Piece("render", sample_rate, tracks, GroupNode("r", tuple(range(n))))


def buf(values, rate=8000):
    return PcmBuffer(samples=np.asarray(values, dtype=np.int16), sample_rate=rate)


def everything_on(n, levels=None):
    return (0, (True,) * n, tuple(levels or [100] * n))


class TestGain:
    def test_endpoints(self):
        assert gain_of(0) == 0
        assert gain_of(100) == 1
        assert gain_of(50) == Fraction(1, 2)

    def test_is_exact_rational(self):
        assert gain_of(33) == Fraction(33, 100)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            gain_of(101)


class TestRender:
    def test_unit_gain_identity(self):
        samples = np.array([5, -7, 32767, -32768, 0, 999], dtype=np.int16)
        out = render(flat_piece(1), [buf(samples)], [everything_on(1)], len(samples))
        assert np.array_equal(out.samples, samples)
        assert out.sample_rate == 8000
        assert out.channels == 1

    def test_zero_level_and_inactive_tracks_are_silent(self):
        samples = np.arange(16, dtype=np.int16)
        piece = flat_piece(1)
        muted = render(piece, [buf(samples)], [(0, (True,), (0,))], 16)
        off = render(piece, [buf(samples)], [(0, (False,), (100,))], 16)
        assert not muted.samples.any()
        assert not off.samples.any()

    def test_two_track_arithmetic(self):
        a = buf(np.full(32, 1000, dtype=np.int16))
        b = buf(np.full(32, 500, dtype=np.int16))
        out = render(flat_piece(2), [a, b], [everything_on(2, [50, 100])], 32)
        assert (out.samples == 1000).all()

    def test_rounding_is_half_away_from_zero(self):
        # 1 * 50/100 rounds to 1, -1 * 50/100 rounds to -1, 3*15% = 0.45 -> 0
        samples = np.array([1, -1, 3, -3], dtype=np.int16)
        out = render(flat_piece(1), [buf(samples)], [(0, (True,), (50,))], 4)
        assert list(out.samples) == [1, -1, 2, -2]
        out = render(flat_piece(1), [buf(samples)], [(0, (True,), (15,))], 4)
        assert list(out.samples) == [0, 0, 0, 0]

    def test_sum_clamps_to_sixteen_bits(self):
        loud = buf(np.full(8, 30000, dtype=np.int16))
        out = render(flat_piece(2), [loud, loud], [everything_on(2)], 8)
        assert (out.samples == 32767).all()
        negative = buf(np.full(8, -30000, dtype=np.int16))
        out = render(flat_piece(2), [negative, negative], [everything_on(2)], 8)
        assert (out.samples == -32768).all()

    def test_short_stems_contribute_silence_past_their_end(self):
        short = buf(np.full(4, 120, dtype=np.int16))
        long = buf(np.full(12, 7, dtype=np.int16))
        out = render(flat_piece(2), [short, long], [everything_on(2)], 12)
        assert list(out.samples[:4]) == [127] * 4
        assert list(out.samples[4:]) == [7] * 8

    def test_timeline_segments_switch_states(self):
        a = buf(np.full(10, 100, dtype=np.int16))
        b = buf(np.full(10, 10, dtype=np.int16))
        timeline = [
            (0, (True, False), (100, 100)),
            (4, (True, True), (100, 100)),
            (7, (False, True), (100, 50)),
        ]
        out = render(flat_piece(2), [a, b], timeline, 10)
        assert list(out.samples) == [100] * 4 + [110] * 3 + [5] * 3

    def test_timeline_past_the_length_is_ignored(self):
        a = buf(np.full(6, 9, dtype=np.int16))
        timeline = [(0, (True,), (100,)), (100, (False,), (100,))]
        assert list(render(flat_piece(1), [a], timeline, 6).samples) == [9] * 6

    def test_repeated_renders_are_bit_identical(self):
        rng = np.random.default_rng(3)
        stems = [buf(rng.integers(-3000, 3000, 64, dtype=np.int16)) for _ in range(3)]
        piece = flat_piece(3)
        timeline = [(0, (True, True, False), (80, 33, 10)), (20, (True, True, True), (12, 100, 66))]
        first = render(piece, stems, timeline, 64)
        second = render(piece, stems, timeline, 64)
        assert np.array_equal(first.samples, second.samples)
        assert first.samples.tobytes() == second.samples.tobytes()

    def test_empty_timeline_is_an_error(self):
        with pytest.raises(EmptyTimeline):
            render(flat_piece(1), [buf([1])], [], 1)

    def test_timeline_must_start_at_zero_and_increase(self):
        with pytest.raises(ValueError):
            render(flat_piece(1), [buf([1])], [(3, (True,), (100,))], 4)
        with pytest.raises(ValueError):
            render(flat_piece(1), [buf([1])],
                   [(0, (True,), (100,)), (0, (True,), (50,))], 4)

    def test_sample_rate_mismatch_is_an_error(self):
        with pytest.raises(SampleRateMismatch):
            render(flat_piece(1), [buf([1], rate=44100)], [everything_on(1)], 1)


def test_linearity_against_a_straightforward_reimplementation():
    rng = np.random.default_rng(17)
    n = 3
    piece = flat_piece(n)
    stems = [buf(rng.integers(-2000, 2000, 40, dtype=np.int16)) for _ in range(n)]
    timeline = [
        (0, (True, False, True), (73, 50, 9)),
        (11, (True, True, True), (100, 1, 40)),
        (29, (False, True, False), (100, 99, 40)),
    ]
    out = render(piece, stems, timeline, 40)

    def scale(value, level):
        q, r = divmod(abs(value) * level, 100)
        scaled = q + (1 if r >= 50 else 0)
        return scaled if value >= 0 else -scaled

    expected = []
    for f in range(40):
        selection, mix = None, None
        for start, sel, levels in timeline:
            if start <= f:
                selection, mix = sel, levels
        total = 0
        for t in range(n):
            if selection[t] and f < len(stems[t].samples):
                total += scale(int(stems[t].samples[f]), mix[t])
        expected.append(max(-32768, min(32767, total)))
    assert list(out.samples) == expected
