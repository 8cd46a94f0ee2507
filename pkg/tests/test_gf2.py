"""Tests for the binary linear-algebra helpers used by the level simulations."""

import numpy as np

from icfeedback.gf2 import (
    bits,
    decoder_matrix,
    determines,
    nullspace,
    probe_matrix,
    rref,
    shift_down,
    solve,
    solve_many,
)


def test_bits_and_shift_down():
    x = bits([1, 0, 1, 1], 4)
    assert x.dtype == np.uint8
    assert list(x) == [1, 0, 1, 1]
    # Shifting toward the low end drops trailing entries and zero-fills the top.
    assert list(shift_down(x, 1)) == [0, 1, 0, 1]
    assert list(shift_down(x, 0)) == [1, 0, 1, 1]
    assert list(shift_down(x, 4)) == [0, 0, 0, 0]
    assert list(shift_down(x, 9)) == [0, 0, 0, 0]


def test_rref_and_nullspace():
    a = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.uint8)
    r, pivots = rref(a)
    assert pivots == [0, 1]
    ns = nullspace(a)
    assert ns.shape == (1, 3)
    assert list(ns[0]) == [1, 1, 1]
    # Every nullspace vector maps to zero.
    assert not ((a @ ns[0]) % 2).any()


def test_solve_consistent_and_inconsistent():
    rng = np.random.default_rng(3)
    for _ in range(100):
        n = int(rng.integers(1, 7))
        m = int(rng.integers(1, 7))
        a = rng.integers(0, 2, size=(m, n)).astype(np.uint8)
        x_true = rng.integers(0, 2, size=n).astype(np.uint8)
        b = (a @ x_true) % 2
        x = solve(a, b.astype(np.uint8))
        assert x is not None
        assert not ((a @ x - b) % 2).any()
    a = np.array([[1, 0], [1, 0]], dtype=np.uint8)
    b = np.array([0, 1], dtype=np.uint8)
    assert solve(a, b) is None


def test_solve_many_matches_columnwise_solve():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        m = int(rng.integers(1, 6))
        k = int(rng.integers(1, 4))
        a = rng.integers(0, 2, size=(m, n)).astype(np.uint8)
        x_true = rng.integers(0, 2, size=(n, k)).astype(np.uint8)
        b = (a @ x_true) % 2
        xs = solve_many(a, b.astype(np.uint8))
        assert xs is not None
        assert not ((a @ xs - b) % 2).any()


def test_probe_matrix_recovers_linear_map():
    def pipeline(x):
        # A fixed linear map with a constant offset folded in.
        m = np.array([[1, 1, 0], [0, 0, 1]], dtype=np.uint8)
        return ((m @ x) + np.array([1, 0], dtype=np.uint8)) % 2

    a, c = probe_matrix(pipeline, 3)
    assert a.shape == (2, 3)
    assert list(c) == [1, 0]
    rng = np.random.default_rng(7)
    for _ in range(20):
        x = rng.integers(0, 2, size=3).astype(np.uint8)
        assert list((a @ x + c) % 2) == list(pipeline(x))


def test_determines_and_decoder_matrix():
    a = np.array([[1, 0, 0], [1, 1, 0], [0, 1, 1]], dtype=np.uint8)
    assert determines(a, [0, 1, 2])
    # A rank-deficient observation cannot pin down all coordinates.
    b = np.array([[1, 1, 0], [1, 1, 0]], dtype=np.uint8)
    assert not determines(b, [0])
    d = decoder_matrix(a, [1, 2])
    rng = np.random.default_rng(13)
    for _ in range(50):
        x = rng.integers(0, 2, size=3).astype(np.uint8)
        y = (a @ x) % 2
        rec = (d @ y) % 2
        assert list(rec) == [x[1], x[2]]
