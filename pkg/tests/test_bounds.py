"""Tests for the symmetric Gaussian bounds, rate regions, and gap scans."""

import math

import numpy as np
import pytest

from icfeedback import (
    GaussianChannelParams,
    SymmetricGaussianParams,
    achievable_region,
    outer_region,
    region_gap_report,
    symmetric_achievable_rate,
    symmetric_gap,
    symmetric_outer_bound,
)
from icfeedback.bounds import (
    default_rho_grid,
    region_gap_scan,
    scan_rows_to_csv,
    sym_gap_scan,
    symmetric_achievable_rate_terms,
)
from icfeedback.geometry import contains, corner_points


def test_achievable_rate_reference_values():
    # Cross-dominant case: the retransmission term 0.5*log2(1+inr) wins.
    p = SymmetricGaussianParams(snr=10.0, inr=100.0)
    left, right = symmetric_achievable_rate_terms(p)
    assert left > right
    assert symmetric_achievable_rate(p) == pytest.approx(
        3.3291057413758973, abs=1e-12)
    assert left == pytest.approx(0.5 * math.log2(101.0), abs=1e-12)
    # Direct-dominant case: the determinant-ratio term wins.
    q = SymmetricGaussianParams(snr=100.0, inr=10.0)
    left, right = symmetric_achievable_rate_terms(q)
    assert right > left
    assert symmetric_achievable_rate(q) == pytest.approx(
        4.597724720484162, abs=1e-12)
    num = (1.0 + 100.0 + 10.0) ** 2 - 100.0 / 11.0
    assert right == pytest.approx(0.5 * math.log2(num / 21.0), abs=1e-12)


def test_achievable_rate_nonnegative_at_tiny_gains():
    rng = np.random.default_rng(2)
    for _ in range(200):
        p = SymmetricGaussianParams(float(rng.uniform(0.0, 0.2)),
                                    float(rng.uniform(0.0, 0.2)))
        assert symmetric_achievable_rate(p) >= 0.0
    assert symmetric_achievable_rate(SymmetricGaussianParams(0.0, 0.0)) == 0.0


def test_outer_bound_degenerate_and_interior_maximizers():
    # With no interference the bound must not pay any correlation penalty.
    value, rho = symmetric_outer_bound(SymmetricGaussianParams(1e6, 0.0))
    assert rho == 0.0
    assert value == pytest.approx(math.log2(1.0 + 1e6), abs=1e-12)
    # Strong symmetric interference pushes the maximizer near 1.
    value, rho = symmetric_outer_bound(SymmetricGaussianParams(1e6, 1e6))
    assert 0.99 < rho < 1.0
    assert rho == pytest.approx(0.99929, abs=1e-3)
    assert symmetric_outer_bound(SymmetricGaussianParams(0.0, 0.0)) == (0.0, 0.0)
    with pytest.raises(ValueError):
        symmetric_outer_bound(SymmetricGaussianParams(10.0, 1.0), tol=0.0)


def test_outer_bound_is_supremum_over_rho():
    rng = np.random.default_rng(19)
    for _ in range(50):
        p = SymmetricGaussianParams(float(10.0 ** rng.uniform(-1, 6)),
                                    float(10.0 ** rng.uniform(-1, 6)))
        value, rho = symmetric_outer_bound(p)
        assert 0.0 <= rho <= 1.0
        s, i = p.snr, p.inr
        for r in np.linspace(0.0, 1.0, 57):
            c = 1.0 - r * r
            cand = 0.5 * (math.log2(1.0 + c * s / (1.0 + c * i))
                          + math.log2(1.0 + s + i + 2.0 * r * math.sqrt(s * i)))
            assert cand <= value + 1e-9


def test_symmetric_gap_reference_values():
    assert symmetric_gap(SymmetricGaussianParams(1e6, 1e6)) == pytest.approx(
        0.999489750110115, abs=1e-9)
    assert symmetric_gap(SymmetricGaussianParams(1e6, 1e3)) == pytest.approx(
        0.536506473738056, abs=1e-9)


def test_symmetric_gap_within_one_bit_randomized():
    rng = np.random.default_rng(31)
    for _ in range(120):
        p = SymmetricGaussianParams(float(10.0 ** rng.uniform(-1, 7)),
                                    float(10.0 ** rng.uniform(-1, 7)))
        g = symmetric_gap(p)
        assert -1e-12 <= g <= 1.0 + 1e-9


def test_default_rho_grid():
    g = default_rho_grid(0.01)
    assert g.size == 101
    assert g[0] == 0.0 and g[-1] == 1.0
    assert np.all(np.diff(g) > 0)


def test_regions_have_finite_corners_and_nesting():
    rho = default_rho_grid(0.05)
    for s, i in ((100.0, 10.0), (1e4, 1e3), (50.0, 200.0)):
        p = SymmetricGaussianParams(s, i).full()
        inner = achievable_region(p, rho)
        outer = outer_region(p, rho)
        assert len(inner.families) == rho.size
        for _, system in inner.families:
            for pt in corner_points(system):
                assert system.satisfied({"R1": pt[0], "R2": pt[1]}, tol=1e-9)
                assert contains(outer, pt, tol=1e-9)


def test_region_with_zero_cross_gain_stays_bounded():
    # A dead cross link makes two inner bounds vacuous; the remaining
    # four must still bound the region.
    p = GaussianChannelParams(snr1=100.0, snr2=100.0, inr12=0.0, inr21=10.0)
    region = achievable_region(p, [0.0, 0.5])
    for _, system in region.families:
        pts = corner_points(system)
        assert pts
        assert all(math.isfinite(c) for pt in pts for c in pt)


def test_gap_report_symmetric_and_asymmetric():
    rho = default_rho_grid(0.01)
    p = SymmetricGaussianParams(100.0, 10.0)
    rep = region_gap_report(p.full(), rho)
    assert rep.gap_sym == pytest.approx(symmetric_gap(p), abs=1e-12)
    assert 0.0 <= rep.delta1 <= 2.0
    assert rep.delta1 == pytest.approx(rep.delta2, abs=1e-12)
    assert 0.0 <= rep.delta12 <= 2.0
    assert 0.0 <= rep.rho_at_max <= 1.0
    assert rep.max_delta == max(rep.delta1, rep.delta2, rep.delta12)
    d = rep.as_dict()
    assert set(d) == {"gap_sym", "delta1", "delta2", "delta12", "rho_at_max"}

    q = GaussianChannelParams(snr1=100.0, snr2=50.0, inr12=10.0, inr21=20.0)
    rep2 = region_gap_report(q, rho)
    assert math.isnan(rep2.gap_sym)
    assert rep2.delta1 >= 0.0 and rep2.delta2 >= 0.0 and rep2.delta12 >= 0.0


def test_gap_report_deltas_bounded_for_unit_gains_randomized():
    rho = default_rho_grid(0.02)
    rng = np.random.default_rng(53)
    for _ in range(40):
        p = GaussianChannelParams(
            snr1=float(10.0 ** rng.uniform(0, 6)),
            snr2=float(10.0 ** rng.uniform(0, 6)),
            inr12=float(10.0 ** rng.uniform(0, 6)),
            inr21=float(10.0 ** rng.uniform(0, 6)))
        rep = region_gap_report(p, rho)
        assert rep.max_delta <= 2.0 + 1e-9
        assert min(rep.delta1, rep.delta2, rep.delta12) >= -1e-9


def test_sym_gap_scan_rows_and_best():
    rows, best = sym_gap_scan([10.0, 0.0], [0.0, 10.0])
    assert [r[:2] for r in rows] == [(0.0, 0.0), (0.0, 10.0),
                                     (10.0, 0.0), (10.0, 10.0)]
    for sdb, idb, ach, outer, gap in rows:
        p = SymmetricGaussianParams(10.0 ** (sdb / 10.0), 10.0 ** (idb / 10.0))
        assert ach == pytest.approx(symmetric_achievable_rate(p), abs=1e-12)
        assert gap == pytest.approx(outer - ach, abs=1e-12)
    assert best[0] == max(r[4] for r in rows)
    assert (best[1], best[2]) == (10.0, 10.0)


def test_region_gap_scan_and_csv_format():
    rho = default_rho_grid(0.05)
    rows, best = region_gap_scan([0.0, 10.0], [0.0, 10.0], rho)
    assert len(rows) == 4
    assert best[0] <= 2.0 + 1e-9
    text = scan_rows_to_csv(("snr_db", "inr_db", "delta1", "delta2", "delta12"),
                            rows)
    lines = text.splitlines()
    assert lines[0] == "snr_db,inr_db,delta1,delta2,delta12"
    assert len(lines) == 5
    first = lines[1].split(",")
    assert first[:2] == ["0", "0"]
    assert all(len(cell.split(".")[-1]) == 6 for cell in first[2:])


def test_scan_csv_reference_rows():
    rows, _ = sym_gap_scan([0.0, 10.0], [0.0, 10.0])
    text = scan_rows_to_csv(("snr_db", "inr_db", "achievable", "outer", "gap"),
                            rows)
    assert text.splitlines()[1] == "0,0,0.751250,1.278659,0.527409"
    assert text.splitlines()[4] == "10,10,2.194670,3.022832,0.828162"
