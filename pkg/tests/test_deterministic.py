"""Tests for the bit-level channel, its capacity region, and the exact
scheme simulations."""

import json
from fractions import Fraction

import numpy as np
import pytest

from icfeedback import (
    DeterministicChannelParams,
    det_capacity_region,
    det_symmetric_rate,
    gdof_feedback,
    gdof_no_feedback,
    simulate_af_binary,
    simulate_corner_point,
    simulate_sk_binary,
    simulate_two_stage_strong,
    simulate_two_stage_weak,
)
from icfeedback.deterministic import (
    CORNER_CHANNEL,
    channel_output_det,
    resource_accounting,
    run_trials,
    two_stage_observation_matrices,
)
from icfeedback.gf2 import bits


def test_channel_output_shifts_and_xor():
    p = DeterministicChannelParams(2, 1, 1, 2)
    x1 = bits([1, 0])
    x2 = bits([1, 1])
    y1, y2 = channel_output_det(x1, x2, p)
    assert list(y1) == [1, 1]   # x1 plus x2 shifted one level down
    assert list(y2) == [1, 0]
    with pytest.raises(ValueError):
        channel_output_det(bits([1]), x2, p)
    # An asymmetric channel: the strongest link sets the height, weaker
    # links shift their input down and drop the sunk bottom bits.
    q = DeterministicChannelParams(3, 1, 2, 1)
    y1, y2 = channel_output_det(bits([1, 1, 1]), bits([1, 1, 0]), q)
    assert list(y1) == [1, 0, 0]   # x1 direct, x2 one level down: (0,1,1)
    assert list(y2) == [0, 0, 0]   # both arrive two levels down: (0,0,1) twice


def test_capacity_region_formulas():
    r = det_capacity_region(DeterministicChannelParams.symmetric(3, 2))
    assert (r.r1_bound, r.r2_bound, r.sum_bound) == (3, 3, 4)
    r = det_capacity_region(DeterministicChannelParams(3, 1, 2, 4))
    assert (r.r1_bound, r.r2_bound, r.sum_bound) == (3, 4, 5)
    r = det_capacity_region(DeterministicChannelParams(0, 0, 0, 0))
    assert (r.r1_bound, r.r2_bound, r.sum_bound) == (0, 0, 0)
    assert r.corner_points() == [(0.0, 0.0)]


def test_capacity_region_membership_and_corners():
    region = det_capacity_region(CORNER_CHANNEL)
    assert (region.r1_bound, region.r2_bound, region.sum_bound) == (2, 2, 3)
    assert region.corner_points() == [(0.0, 0.0), (2.0, 0.0), (2.0, 1.0),
                                      (1.0, 2.0), (0.0, 2.0)]
    assert region.contains(2, 1)
    assert region.contains(Fraction(3, 2), Fraction(3, 2))
    assert not region.contains(2, 2)
    assert not region.contains(-1, 0)
    assert region.symmetric_rate() == Fraction(3, 2)


def test_symmetric_rate_formula():
    assert det_symmetric_rate(1, 3) == Fraction(3, 2)
    assert det_symmetric_rate(2, 1) == Fraction(3, 2)
    assert det_symmetric_rate(2, 2) == 1
    assert det_symmetric_rate(5, 3) == Fraction(7, 2)
    assert det_symmetric_rate(4, 0) == 4
    assert isinstance(det_symmetric_rate(3, 2), Fraction)
    with pytest.raises(ValueError):
        det_symmetric_rate(-1, 0)


def test_symmetric_rate_equals_region_point():
    for n in range(0, 9):
        for m in range(0, 9):
            region = det_capacity_region(
                DeterministicChannelParams.symmetric(n, m))
            assert region.symmetric_rate() == det_symmetric_rate(n, m), (n, m)


def test_feedback_rate_never_below_no_feedback_point():
    for n, m in ((1, 3), (2, 1), (2, 2)):
        region = det_capacity_region(DeterministicChannelParams.symmetric(n, m))
        pt = n * gdof_no_feedback(m / n)
        assert region.contains(pt, pt), (n, m)
        assert float(det_symmetric_rate(n, m)) >= pt - 1e-12


def test_normalized_symmetric_rate_tracks_curve():
    n = 48
    for a in (0.0, 0.25, 0.5, 2.0 / 3.0, 1.0, 1.5, 2.0, 3.0):
        m = round(a * n)
        normalized = float(det_symmetric_rate(n, m)) / n
        assert abs(normalized - gdof_feedback(a)) <= 1.0 / n


def test_two_stage_strong_round_trip():
    t = simulate_two_stage_strong(1, 3, msg1=[1, 0, 1], msg2=[0, 1, 1])
    assert t.success
    assert t.rates == (1.5, 1.5)
    assert [list(m) for m in t.messages] == [[1, 0, 1], [0, 1, 1]]
    assert [list(d) for d in t.decoded] == [[1, 0, 1], [0, 1, 1]]
    assert len(t.sent) == 2 and len(t.received) == 2
    doc = json.loads(t.to_json())
    assert doc["scheme"] == "two_stage_strong"
    assert doc["success"] is True
    assert doc["messages"] == ["101", "011"]
    with pytest.raises(ValueError):
        simulate_two_stage_strong(3, 2)
    with pytest.raises(ValueError):
        simulate_two_stage_strong(1, 3, msg1=[1, 0])


def test_two_stage_weak_round_trip():
    t = simulate_two_stage_weak(2, 1, msgs=([1, 0, 1], [0, 0, 1]))
    assert t.success
    assert t.rates == (1.5, 1.5)
    assert [list(d) for d in t.decoded] == [[1, 0, 1], [0, 0, 1]]
    with pytest.raises(ValueError):
        simulate_two_stage_weak(2, 3)


def test_two_stage_equal_gain_degenerate_case():
    # Equal direct and cross gains: simultaneous swapped retransmission
    # would reproduce stage 1, so stage 2 is one-sided.
    for n in (1, 2, 3):
        assert simulate_two_stage_strong(n, n, seed=5).success
        assert simulate_two_stage_weak(n, n, seed=6).success


def test_two_stage_decodes_across_level_sweep():
    trials = 0
    for n in range(1, 5):
        for m in range(0, 7):
            sim = (simulate_two_stage_strong if m >= n
                   else simulate_two_stage_weak)
            res = run_trials(lambda seed: sim(n, m, seed=seed), 40,
                             seed=n * 10 + m)
            assert res["failures"] == 0, (n, m)
            per_user = m if m >= n else 2 * n - m
            assert res["rates"] == [per_user / 2.0] * 2, (n, m)
            trials += res["trials"]
    assert trials >= 1000


def test_observation_matrices_have_no_dead_levels():
    # Packing property: every received level in the two-stage schemes
    # carries at least one message bit.
    for n in range(1, 7):
        for m in range(0, 7):
            a1, a2 = two_stage_observation_matrices(n, m)
            for a in (a1, a2):
                assert a.shape[0] > 0
                assert a.any(axis=1).all(), (n, m)


def test_corner_point_rates_and_round_trip():
    t = simulate_corner_point(1000, seed=3)
    assert t.success
    assert t.rates == (2.0, 0.999)
    assert len(t.messages[0]) == 2000 and len(t.messages[1]) == 999

    msgs = ([1, 0, 0, 1, 1, 1], [1, 0])
    t3 = simulate_corner_point(3, msgs=msgs)
    assert t3.success
    assert [list(d) for d in t3.decoded] == [list(m) for m in msgs]
    assert t3.rates == (2.0, pytest.approx(2.0 / 3.0))

    t1 = simulate_corner_point(1, seed=0)
    assert t1.success and t1.rates == (2.0, 0.0)
    t2 = simulate_corner_point(2, seed=0)
    assert t2.success and t2.rates == (2.0, 0.5)
    with pytest.raises(ValueError):
        simulate_corner_point(0)


def test_corner_point_is_region_vertex():
    region = det_capacity_region(CORNER_CHANNEL)
    assert (2.0, 1.0) in region.corner_points()


def test_resource_accounting():
    assert resource_accounting(2, 1, 2, 1) == (2, 4)
    with pytest.raises(ValueError):
        resource_accounting(2, 1, -1, 0)
    with pytest.raises(ValueError):
        resource_accounting(2, 1, 1.5, 0)
    # Full utilization: both two-stage schemes spend exactly the level
    # budget of two channel uses, and rate = (private + common) / 2.
    for n in range(1, 6):
        for m in range(0, 7):
            if m >= n:
                private, common = 0, m
            else:
                private, common = 2 * (n - m), m
            levels, cost = resource_accounting(n, m, private, common)
            assert levels == max(n, m)
            assert cost == 2 * levels
            assert Fraction(private + common, 2) == det_symmetric_rate(n, m)


def test_sk_binary_refinement():
    t = simulate_sk_binary(3, 1, 100, seed=0)
    assert t.success
    assert t.rates == (2.0,)
    assert len(t.messages[0]) == 200
    noiseless = simulate_sk_binary(4, 0, 5, seed=9)
    assert noiseless.success and noiseless.rates == (4.0,)
    assert len(noiseless.messages[0]) == 20
    fixed = simulate_sk_binary(2, 1, 3, msg=[1, 0, 1], seed=1)
    assert fixed.success
    assert list(fixed.decoded[0]) == [1, 0, 1]
    for q, u, slots in ((3, 3, 5), (3, 2, 5), (2, 1, 1), (0, 0, 1)):
        with pytest.raises(ValueError):
            simulate_sk_binary(q, u, slots)


def test_sk_binary_noise_robustness():
    res = run_trials(lambda seed: simulate_sk_binary(3, 1, 20, seed=seed),
                     300, seed=17)
    assert res["failures"] == 0


def test_af_binary_scheme():
    t = simulate_af_binary(seed=4)
    assert t.success
    assert t.rates == (1.5, 1.5)
    zero = simulate_af_binary(msgs=([0, 0, 0], [0, 0, 0]),
                              noise=((0, 0), (0, 0)))
    assert zero.success
    assert not any(f.any() for stage in zero.sent for f in stage)
    assert not any(f.any() for stage in zero.received for f in stage)
    mixed = simulate_af_binary(msgs=([1, 0, 1], [0, 1, 1]),
                               noise=((1, 0), (0, 1)))
    assert mixed.success
    assert [list(d) for d in mixed.decoded] == [[1, 0, 1], [0, 1, 1]]
    with pytest.raises(ValueError):
        simulate_af_binary(noise=((1, 0, 0), (0, 0, 1)))
    res = run_trials(lambda seed: simulate_af_binary(seed=seed), 300, seed=23)
    assert res["failures"] == 0


def test_run_trials_reporting():
    res = run_trials(lambda seed: simulate_two_stage_strong(1, 2, seed=seed),
                     25, seed=1)
    assert res == {"trials": 25, "failures": 0, "rates": [1.0, 1.0]}
