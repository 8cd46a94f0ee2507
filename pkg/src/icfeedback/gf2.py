"""Small GF(2) linear-algebra toolkit on numpy uint8 arrays.

Bit vectors index from the top: position 0 is the most significant
level of a signal.  All matrices are dense uint8 with entries in {0, 1}.
"""

from __future__ import annotations

import numpy as np


def bits(values, width: int | None = None) -> np.ndarray:
    """Coerce an iterable of 0/1 values to a uint8 vector, optionally
    left-padding with zeros to `width`."""
    v = np.asarray(list(values), dtype=np.uint8) % 2
    if width is not None:
        if v.size > width:
            raise ValueError(f"got {v.size} bits, wider than {width}")
        v = np.concatenate([np.zeros(width - v.size, dtype=np.uint8), v])
    return v

def shift_down(x: np.ndarray, k: int) -> np.ndarray:
    """Shift a top-indexed bit vector toward the bottom by k levels,
    zero-filling at the top; the bottom k bits fall off."""
    if k < 0:
        raise ValueError("shift must be nonnegative")
    if k == 0:
        return x.copy()
    out = np.zeros_like(x)
    if k < x.size:
        out[k:] = x[:-k]
    return out


def rref(a: np.ndarray) -> tuple[np.ndarray, list]:
    """Reduced row echelon form over GF(2); returns (R, pivot column list)."""
    r = (np.asarray(a, dtype=np.uint8) % 2).copy()
    rows, cols = r.shape
    pivots = []
    lead = 0
    for col in range(cols):
        if lead >= rows:
            break
        hits = np.nonzero(r[lead:, col])[0]
        if hits.size == 0:
            continue
        sel = lead + hits[0]
        if sel != lead:
            r[[lead, sel]] = r[[sel, lead]]
        others = np.nonzero(r[:, col])[0]
        for i in others:
            if i != lead:
                r[i] ^= r[lead]
        pivots.append(col)
        lead += 1
    return r, pivots


def nullspace(a: np.ndarray) -> np.ndarray:
    """Basis of the right nullspace, one vector per row; empty (0, n)
    array when the kernel is trivial."""
    r, pivots = rref(a)
    n = r.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for row, pc in enumerate(pivots):
            basis[k, pc] = r[row, fc]
    return basis


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One solution of A x = b over GF(2), or None if inconsistent.
    Free coordinates are set to 0."""
    a = np.asarray(a, dtype=np.uint8) % 2
    b = np.asarray(b, dtype=np.uint8) % 2
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    r, pivots = rref(aug)
    n = a.shape[1]
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.uint8)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, n]
    return x


def probe_matrix(pipeline, n_inputs: int) -> tuple[np.ndarray, np.ndarray]:
    """Matrix and affine offset of a GF(2)-affine map.

    `pipeline` maps a uint8 input vector of length n_inputs to a uint8
    output vector.  Returns (A, c) with pipeline(x) = A x xor c, found by
    probing the zero vector and each unit vector.  The caller is
    responsible for the map actually being affine.
    """
    zero = np.zeros(n_inputs, dtype=np.uint8)
    c = np.asarray(pipeline(zero), dtype=np.uint8) % 2
    cols = []
    for i in range(n_inputs):
        e = zero.copy()
        e[i] = 1
        cols.append((np.asarray(pipeline(e), dtype=np.uint8) ^ c) % 2)
    a = np.stack(cols, axis=1) if cols else np.zeros((c.size, 0), dtype=np.uint8)
    return a, c


def determines(a: np.ndarray, coords) -> bool:
    """True iff every listed input coordinate is uniquely determined by
    observations A x: the nullspace of A vanishes on those coordinates."""
    coords = list(coords)
    if not coords:
        return True
    ns = nullspace(a)
    if ns.shape[0] == 0:
        return True
    return not ns[:, coords].any()


def solve_many(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Solutions X of A X = B over GF(2) (columnwise), or None if any
    column is inconsistent.  Free coordinates are set to 0."""
    a = np.asarray(a, dtype=np.uint8) % 2
    b = np.asarray(b, dtype=np.uint8) % 2
    n = a.shape[1]
    aug = np.concatenate([a, b], axis=1)
    r, pivots = rref(aug)
    if any(pc >= n for pc in pivots):
        return None
    x = np.zeros((n, b.shape[1]), dtype=np.uint8)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, n:]
    return x


def decoder_matrix(a: np.ndarray, coords) -> np.ndarray | None:
    """Matrix D with (D @ A @ x) % 2 == x[coords] for every x, or None
    when some listed coordinate is not determined by observations A x.
    Lets a fixed linear scheme be decoded per trial by one matrix
    multiply instead of a fresh elimination."""
    coords = list(coords)
    n_obs, n_in = a.shape
    sel = np.zeros((n_in, len(coords)), dtype=np.uint8)
    for j, c in enumerate(coords):
        sel[c, j] = 1
    x = solve_many(a.T % 2, sel)
    if x is None:
        return None
    return x.T.copy()
