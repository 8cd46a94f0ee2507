"""Linear deterministic interference channel with feedback.

Signals are bit vectors of height q = max level count; the channel shifts
each transmitted vector down by the attenuation of its link and XORs the
arrivals.  This module provides the exact feedback capacity region, the
symmetric-rate formulas, and bit-exact executions of the feedback
schemes: the two-stage strong- and weak-interference schemes, the
infinite-stage corner-point scheme, and the two noisy-binary-expansion
examples (a single-user refinement scheme and a two-user
amplify-and-forward scheme).

Receiver decoding in the two-stage schemes runs through an explicit GF(2)
linear solve of the stacked observation system rather than per-scheme bit
chasing, so "the observations determine the message" is an assertable
rank condition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import gf2
from .channel import DeterministicChannelParams
from .geometry import HalfPlaneSystem, LinearInequality, corner_points


def channel_output_det(x1: np.ndarray, x2: np.ndarray,
                       p: DeterministicChannelParams):
    """One channel use: y1 = shift(x1, q-n11) xor shift(x2, q-n21),
    y2 = shift(x2, q-n22) xor shift(x1, q-n12), shifts toward the bottom
    with zero fill."""
    q = p.q
    if x1.size != q or x2.size != q:
        raise ValueError(f"frames must have height {q}")
    y1 = gf2.shift_down(x1, q - p.n11) ^ gf2.shift_down(x2, q - p.n21)
    y2 = gf2.shift_down(x2, q - p.n22) ^ gf2.shift_down(x1, q - p.n12)
    return y1, y2


@dataclass(frozen=True)
class DetRateRegion:
    """Feedback capacity region of the deterministic channel: two
    individual bounds and a sum bound, all integers."""

    r1_bound: int
    r2_bound: int
    sum_bound: int

    @property
    def system(self) -> HalfPlaneSystem:
        return HalfPlaneSystem(("R1", "R2"), (
            LinearInequality({"R1": 1}, self.r1_bound),
            LinearInequality({"R2": 1}, self.r2_bound),
            LinearInequality({"R1": 1, "R2": 1}, self.sum_bound),
        ))

    def corner_points(self) -> list:
        return corner_points(self.system)

    def symmetric_rate(self) -> Fraction:
        """Largest R with (R, R) in the region."""
        return min(Fraction(self.r1_bound), Fraction(self.r2_bound),
                   Fraction(self.sum_bound, 2))

    def contains(self, r1, r2) -> bool:
        return (0 <= r1 <= self.r1_bound and 0 <= r2 <= self.r2_bound
                and r1 + r2 <= self.sum_bound)


def det_capacity_region(p: DeterministicChannelParams) -> DetRateRegion:
    """Exact feedback capacity region of the deterministic channel."""
    pos = lambda v: max(v, 0)
    r1 = min(max(p.n11, p.n12), max(p.n11, p.n21))
    r2 = min(max(p.n22, p.n21), max(p.n22, p.n12))
    rsum = min(max(p.n22, p.n12) + pos(p.n11 - p.n12),
               max(p.n11, p.n21) + pos(p.n22 - p.n21))
    return DetRateRegion(r1, r2, rsum)


def det_symmetric_rate(n: int, m: int) -> Fraction:
    """Symmetric feedback rate of the (n, m) symmetric channel:
    m/2 when interference dominates (m >= n), else n - m/2."""
    if n < 0 or m < 0:
        raise ValueError("level counts must be nonnegative")
    if m >= n:
        return Fraction(m, 2)
    return n - Fraction(m, 2)


# ---------------------------------------------------------------------------
# transcripts


def _bit_str(arr: np.ndarray) -> str:
    return "".join("1" if b else "0" for b in arr)


@dataclass(frozen=True)
class SchemeTranscript:
    """Full record of one scheme execution: per-stage frames, the message
    bits in and out, per-user rates in bits per channel use, and whether
    every decoded bit matched."""

    scheme: str
    sent: tuple       # per stage: tuple of transmitted frames
    received: tuple   # per stage: tuple of received frames
    messages: tuple   # per user: message bit vector
    decoded: tuple    # per user: decoded bit vector
    rates: tuple      # per user: achieved rate
    success: bool
    detail: str | None = None

    def to_json(self) -> str:
        doc = {
            "scheme": self.scheme,
            "stages": [
                {"sent": [_bit_str(f) for f in sent],
                 "received": [_bit_str(f) for f in recv]}
                for sent, recv in zip(self.sent, self.received)
            ],
            "messages": [_bit_str(m) for m in self.messages],
            "decoded": [_bit_str(m) for m in self.decoded],
            "rates": [float(r) for r in self.rates],
            "success": self.success,
            "detail": self.detail,
        }
        return json.dumps(doc, indent=2, sort_keys=True)


def _msg(bits_or_none, length: int, rng) -> np.ndarray:
    if bits_or_none is None:
        return rng.integers(0, 2, length, dtype=np.uint8)
    v = gf2.bits(bits_or_none)
    if v.size != length:
        raise ValueError(f"message must have {length} bits, got {v.size}")
    return v


def _transcript(scheme, sent, received, messages, decoded, rates):
    ok = all(np.array_equal(d, m) for d, m in zip(decoded, messages))
    detail = None if ok else "decoded bits differ from sent message"
    return SchemeTranscript(scheme, tuple(sent), tuple(received),
                            tuple(messages), tuple(decoded), tuple(rates),
                            ok, detail)


# ---------------------------------------------------------------------------
# two-stage schemes


def _strong_frames(n: int, m: int, msg1: np.ndarray, msg2: np.ndarray):
    """Frame sequence of the strong-interference (m >= n) two-stage
    scheme.  Each transmitter reads the other's m bits off its feedback
    (the cross link carries them in full) and retransmits them; at
    m == n retransmission is one-sided, since simultaneous swapped
    retransmission would reproduce the stage-1 observations."""
    p = DeterministicChannelParams(n, m, m, n)
    x1, x2 = msg1, msg2
    y1, y2 = channel_output_det(x1, x2, p)
    b_hat = y1 ^ gf2.shift_down(x1, m - n)
    a_hat = y2 ^ gf2.shift_down(x2, m - n)
    if m == n:
        x1b, x2b = b_hat, np.zeros(m, dtype=np.uint8)
    else:
        x1b, x2b = b_hat, a_hat
    y1b, y2b = channel_output_det(x1b, x2b, p)
    return [(x1, x2), (x1b, x2b)], [(y1, y2), (y1b, y2b)]


def _weak_frames(n: int, m: int, msg1: np.ndarray, msg2: np.ndarray):
    """Frame sequence of the weak-interference (m <= n) two-stage scheme.
    Stage 1 sends n fresh bits; feedback hands each transmitter the other
    user's top m (common) bits, which it forwards on its own top levels in
    stage 2 above n-m fresh private bits.  One-sided stage 2 at m == n as
    in the strong scheme."""
    p = DeterministicChannelParams(n, m, m, n)
    x1, x2 = msg1[:n], msg2[:n]
    y1, y2 = channel_output_det(x1, x2, p)
    b_common = (y1 ^ x1)[n - m:]
    a_common = (y2 ^ x2)[n - m:]
    if m == n:
        x1b = b_common
        x2b = np.zeros(n, dtype=np.uint8)
    else:
        x1b = np.concatenate([b_common, msg1[n:]])
        x2b = np.concatenate([a_common, msg2[n:]])
    y1b, y2b = channel_output_det(x1b, x2b, p)
    return [(x1, x2), (x1b, x2b)], [(y1, y2), (y1b, y2b)]


@lru_cache(maxsize=None)
def _two_stage_decoders(n: int, m: int):
    """Per-receiver decode matrices for the (n, m) two-stage scheme.

    The scheme is GF(2)-linear in the concatenated messages, so each
    receiver's two stacked observations form A_k (msg1||msg2); the
    decoder solves for its own coordinates, which must be uniquely
    determined (rank condition; guaranteed by construction)."""
    strong = m >= n
    per_user = m if strong else 2 * n - m
    frames = _strong_frames if strong else _weak_frames

    def rx_map(k):
        def pipeline(v):
            _, received = frames(n, m, v[:per_user], v[per_user:])
            return np.concatenate([received[0][k], received[1][k]])
        return pipeline

    decoders = []
    for k, coords in ((0, range(per_user)),
                      (1, range(per_user, 2 * per_user))):
        a, c = gf2.probe_matrix(rx_map(k), 2 * per_user)
        if c.any():
            raise AssertionError("scheme map is not linear")
        d = gf2.decoder_matrix(a, coords)
        if d is None:
            raise AssertionError(
                f"receiver {k + 1} cannot determine its message at (n={n}, m={m})")
        decoders.append(d)
    return per_user, tuple(decoders)


def _run_two_stage(scheme: str, n: int, m: int, msg1, msg2, seed):
    rng = np.random.default_rng(seed)
    per_user, decoders = _two_stage_decoders(n, m)
    msg1 = _msg(msg1, per_user, rng)
    msg2 = _msg(msg2, per_user, rng)
    frames = _strong_frames if m >= n else _weak_frames
    sent, received = frames(n, m, msg1, msg2)
    decoded = []
    for k in range(2):
        obs = np.concatenate([received[0][k], received[1][k]])
        decoded.append((decoders[k] @ obs) % 2)
    rate = float(Fraction(per_user, 2))
    return _transcript(scheme, sent, received, (msg1, msg2),
                       tuple(d.astype(np.uint8) for d in decoded),
                       (rate, rate))


def simulate_two_stage_strong(n: int, m: int, msg1=None, msg2=None,
                              seed=None) -> SchemeTranscript:
    """Run the strong-interference two-stage scheme (m >= n): both users
    send m fresh bits, then swap them via feedback.  Rate m/2 per user."""
    if not 0 <= n <= m:
        raise ValueError("strong scheme needs m >= n >= 0")
    return _run_two_stage("two_stage_strong", n, m, msg1, msg2, seed)


def simulate_two_stage_weak(n: int, m: int, msgs=None,
                            seed=None) -> SchemeTranscript:
    """Run the weak-interference two-stage scheme (m <= n): n fresh bits,
    then the other user's m common bits forwarded above n-m fresh private
    bits.  Rate (2n-m)/2 per user; message length 2n-m per user."""
    if not 0 <= m <= n:
        raise ValueError("weak scheme needs n >= m >= 0")
    msg1, msg2 = msgs if msgs is not None else (None, None)
    return _run_two_stage("two_stage_weak", n, m, msg1, msg2, seed)


def two_stage_observation_matrices(n: int, m: int):
    """The stacked observation matrices (A_rx1, A_rx2) of the (n, m)
    two-stage scheme, columns indexed by msg1||msg2 bits.  Exposed for
    rank/packing inspection."""
    strong = m >= n
    per_user = m if strong else 2 * n - m
    frames = _strong_frames if strong else _weak_frames
    mats = []
    for k in range(2):
        def pipeline(v, k=k):
            _, received = frames(n, m, v[:per_user], v[per_user:])
            return np.concatenate([received[0][k], received[1][k]])
        a, _ = gf2.probe_matrix(pipeline, 2 * per_user)
        mats.append(a)
    return tuple(mats)


# ---------------------------------------------------------------------------
# corner-point scheme


CORNER_CHANNEL = DeterministicChannelParams(2, 1, 1, 2)


def simulate_corner_point(B: int, msgs=None, seed=None) -> SchemeTranscript:
    """Run the B-slot scheme pinning the asymmetric corner (2, (B-1)/B)
    of the (2,1,1,2) channel.

    User 1 streams 2 fresh bits per slot on both levels.  User 2 sends a
    message bit only on its bottom (non-interfering) level, and from slot
    2 on relays on its top level the user-1 bit it read off feedback in
    the previous slot; receiver 1 already knows that bit and cancels it,
    while receiver 2 uses the relay to strip user-1 interference from its
    previous observation.  User 2 therefore delivers B-1 bits in B slots.
    """
    if B < 1:
        raise ValueError("B must be at least 1")
    rng = np.random.default_rng(seed)
    msg1, msg2 = msgs if msgs is not None else (None, None)
    a = _msg(msg1, 2 * B, rng)
    b = _msg(msg2, B - 1, rng)
    p = CORNER_CHANNEL

    sent, received = [], []
    relay = np.uint8(0)  # user-2 top-level symbol for the current slot
    for t in range(1, B + 1):
        x1 = np.array([a[2 * t - 2], a[2 * t - 1]], dtype=np.uint8)
        bottom = b[t - 1] if t <= B - 1 else np.uint8(0)
        x2 = np.array([relay, bottom], dtype=np.uint8)
        y1, y2 = channel_output_det(x1, x2, p)
        sent.append((x1, x2))
        received.append((y1, y2))
        relay = y2[1] ^ bottom  # feedback hands user 2 the bit a_{2t-1}

    a_hat = np.zeros(2 * B, dtype=np.uint8)
    prev_odd = np.uint8(0)
    for t in range(1, B + 1):
        y1 = received[t - 1][0]
        a_hat[2 * t - 2] = y1[0]
        a_hat[2 * t - 1] = y1[1] ^ prev_odd
        prev_odd = a_hat[2 * t - 2]
    b_hat = np.zeros(B - 1, dtype=np.uint8)
    for t in range(2, B + 1):
        b_hat[t - 2] = received[t - 2][1][1] ^ received[t - 1][1][0]

    rates = (2.0, (B - 1) / B)
    return _transcript("corner_point", sent, received, (a, b),
                       (a_hat, b_hat), rates)


# ---------------------------------------------------------------------------
# resource accounting


def resource_accounting(n: int, m: int, x_private: int, y_common: int):
    """Receiver level budget and spend: a private bit occupies one level
    (its own receiver), a common bit two (both receivers).  Returns
    (levels per receiver, total cost x + 2y)."""
    for v in (n, m, x_private, y_common):
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ValueError("counts must be nonnegative integers")
    return max(n, m), x_private + 2 * y_common


# ---------------------------------------------------------------------------
# noisy binary expansion examples


def simulate_sk_binary(q_levels: int, noise_level: int, slots: int,
                       seed=None, msg=None) -> SchemeTranscript:
    """Single-user noisy-binary-expansion channel with feedback
    refinement.

    The bottom `noise_level` levels are hit by fresh Ber(1/2) noise each
    slot.  Feedback hands the transmitter the realized noise, which it
    resends on its top levels in the next slot; the receiver then cleans
    the previous slot retroactively.  The last slot carries no message on
    noisy levels, so all T*(q-u) message bits come through exactly and the
    per-slot rate is exactly q - u.

    Needs 2*noise_level <= q_levels (the refinement must sit on clean
    levels) and at least 2 slots when there is any noise.
    """
    q, u, t_all = q_levels, noise_level, slots
    if q < 1 or u < 0 or u >= q:
        raise ValueError("need 0 <= noise_level < q_levels")
    if 2 * u > q:
        raise ValueError("refinement needs 2*noise_level <= q_levels")
    if t_all < 1 or (u > 0 and t_all < 2):
        raise ValueError("need at least 2 slots when noise is present")
    rng = np.random.default_rng(seed)
    total = t_all * (q - u) if u > 0 else t_all * q
    message = _msg(msg, total, rng)

    pos = 0

    def take(k):
        nonlocal pos
        out = message[pos:pos + k]
        pos += k
        return out

    sent, received, noises = [], [], []
    prev_noise = None
    for t in range(1, t_all + 1):
        x = np.zeros(q, dtype=np.uint8)
        if u == 0:
            x[:] = take(q)
        elif t == 1:
            x[:] = take(q)
        elif t < t_all:
            x[:u] = prev_noise
            x[u:] = take(q - u)
        else:
            x[:u] = prev_noise
            x[u:q - u] = take(q - 2 * u)
        z = np.zeros(q, dtype=np.uint8)
        if u > 0:
            z[q - u:] = rng.integers(0, 2, u, dtype=np.uint8)
        y = x ^ z
        sent.append((x,))
        received.append((y,))
        noises.append(z)
        prev_noise = z[q - u:] if u > 0 else None

    decoded = []
    for t in range(1, t_all + 1):
        y = received[t - 1][0]
        lo = 0 if (u == 0 or t == 1) else u
        hi = q if (u == 0 or t < t_all) else q - u
        body = y[lo:hi].copy()
        if u > 0 and t < t_all:
            # noisy tail of this slot: clean with next slot's refinement
            refinement = received[t][0][:u]
            body[-u:] ^= refinement
        decoded.append(body)
    decoded_msg = np.concatenate(decoded) if decoded else np.zeros(0, np.uint8)

    rate = (q - u) if u > 0 else q
    return _transcript("sk_binary", sent, received, (message,),
                       (decoded_msg,), (float(rate),))


AF_BINARY_LEVELS = 3


def simulate_af_binary(seed=None, msgs=None, noise=None) -> SchemeTranscript:
    """Two-user noisy-binary-expansion channel, amplify-and-forward.

    Each user has 3 levels; the cross link sits one level lower and each
    receiver's bottom level takes fresh Ber(1/2) noise per stage.  Stage
    2 forwards the interference-plus-noise read off feedback, shifted to
    the top; each receiver combines its two observations to recover all
    3 bits, its own stage-1 noise cancelling exactly.  Rate 3/2 per user.

    `noise`, when given, is ((z1_stage1, z1_stage2), (z2_stage1,
    z2_stage2)) bottom-level bits, overriding the seeded draw.
    """
    rng = np.random.default_rng(seed)
    msg1, msg2 = msgs if msgs is not None else (None, None)
    a = _msg(msg1, 3, rng)
    b = _msg(msg2, 3, rng)
    if noise is None:
        z = rng.integers(0, 2, (2, 2), dtype=np.uint8)  # [rx, stage]
    else:
        z = np.array(noise, dtype=np.uint8) % 2
        if z.shape != (2, 2):
            raise ValueError("noise must be 2x2 bottom-level bits")

    def rx(x_own, x_other, z_bit):
        y = x_own ^ gf2.shift_down(x_other, 1)
        y[2] ^= z_bit
        return y

    y1a = rx(a, b, z[0, 0])
    y2a = rx(b, a, z[1, 0])
    s2 = y1a ^ a   # interference-plus-noise at receiver 1: (0, b1, b2^z1)
    s1 = y2a ^ b
    x1b = np.array([s2[1], s2[2], 0], dtype=np.uint8)
    x2b = np.array([s1[1], s1[2], 0], dtype=np.uint8)
    y1b = rx(x1b, x2b, z[0, 1])
    y2b = rx(x2b, x1b, z[1, 1])

    a_hat = np.array([y1a[0],
                      y1a[1] ^ y1b[0],
                      y1a[2] ^ y1b[1] ^ y1a[0]], dtype=np.uint8)
    b_hat = np.array([y2a[0],
                      y2a[1] ^ y2b[0],
                      y2a[2] ^ y2b[1] ^ y2a[0]], dtype=np.uint8)

    return _transcript("af_binary",
                       [(a, b), (x1b, x2b)],
                       [(y1a, y2a), (y1b, y2b)],
                       (a, b), (a_hat, b_hat), (1.5, 1.5))


# ---------------------------------------------------------------------------
# batched trials


def run_trials(simulate, trials: int, seed=None) -> dict:
    """Run `simulate(seed=k)` for `trials` derived seeds and tally
    failures; returns {trials, failures, rates} with rates from the last
    transcript (they are structural, identical across trials)."""
    rng = np.random.default_rng(seed)
    failures = 0
    rates = ()
    for _ in range(trials):
        t = simulate(seed=int(rng.integers(0, 2 ** 63 - 1)))
        rates = t.rates
        if not t.success:
            failures += 1
    return {"trials": trials, "failures": failures,
            "rates": [float(r) for r in rates]}
