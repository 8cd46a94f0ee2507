"""Parameter types for the two-user interference channel.

Two coupled channel descriptions are used throughout the package:

* the complex Gaussian channel, described by four link power gains
  (snr1, snr2, inr12, inr21), where inr_ij is the power gain of the
  cross link from transmitter i to receiver j;
* the linear deterministic channel, described by four integer level
  counts (n11, n12, n21, n22).

Gains are always linear power ratios (|g|^2), never dB.  Transmit power
and noise power are normalized to 1, so the gains fully specify the
channel.  Conversions to and from dB are explicit helpers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def from_db(x_db: float) -> float:
    """Convert a dB power value to linear scale: 10**(x_db/10)."""
    if not math.isfinite(x_db):
        raise ValueError(f"dB value must be finite, got {x_db!r}")
    return 10.0 ** (x_db / 10.0)


def to_db(x: float) -> float:
    """Convert a linear power value (> 0) to dB: 10*log10(x)."""
    if x <= 0.0:
        raise ValueError(f"dB undefined for non-positive power {x!r}")
    return 10.0 * math.log10(x)


def _check_gain(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0.0:
        raise ValueError(f"{name} must be finite and >= 0, got {value!r}")
    return value


@dataclass(frozen=True)
class GaussianChannelParams:
    """Link power gains of the two-user Gaussian interference channel.

    snr_k is the direct gain of user k; inr_ij is the cross gain from
    transmitter i to receiver j.  All linear scale, all >= 0.
    """

    snr1: float
    snr2: float
    inr12: float
    inr21: float

    def __post_init__(self) -> None:
        for name in ("snr1", "snr2", "inr12", "inr21"):
            object.__setattr__(self, name, _check_gain(name, getattr(self, name)))

    @property
    def is_symmetric(self) -> bool:
        return self.snr1 == self.snr2 and self.inr12 == self.inr21


@dataclass(frozen=True)
class SymmetricGaussianParams:
    """Symmetric special case: snr = snr1 = snr2, inr = inr12 = inr21."""

    snr: float
    inr: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "snr", _check_gain("snr", self.snr))
        object.__setattr__(self, "inr", _check_gain("inr", self.inr))

    def full(self) -> GaussianChannelParams:
        """Expand to the four-gain parameter set."""
        return GaussianChannelParams(self.snr, self.snr, self.inr, self.inr)


def alpha(p: SymmetricGaussianParams) -> float:
    """Interference ratio log(inr)/log(snr).

    Classifies the regimes: weak (alpha < 1), strong (1 <= alpha < 2),
    very strong (alpha >= 2).  Requires snr > 1 so the ratio is defined,
    and inr > 0 so the numerator is finite.
    """
    if p.snr <= 1.0:
        raise ValueError(f"alpha undefined for snr <= 1 (got snr={p.snr!r})")
    if p.inr <= 0.0:
        raise ValueError(f"alpha undefined for inr <= 0 (got inr={p.inr!r})")
    return math.log(p.inr) / math.log(p.snr)


@dataclass(frozen=True)
class DeterministicChannelParams:
    """Signal level counts of the linear deterministic interference channel.

    n_kk is the number of levels on user k's direct link, n_ij on the
    cross link from transmitter i to receiver j.  The frame height is
    q = max of the four counts.
    """

    n11: int
    n12: int
    n21: int
    n22: int

    def __post_init__(self) -> None:
        for name in ("n11", "n12", "n21", "n22"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")

    @property
    def q(self) -> int:
        return max(self.n11, self.n12, self.n21, self.n22)

    @classmethod
    def symmetric(cls, n: int, m: int) -> "DeterministicChannelParams":
        """Symmetric case: n direct levels, m cross levels for both users."""
        return cls(n11=n, n12=m, n21=m, n22=n)


def to_deterministic(p: GaussianChannelParams) -> DeterministicChannelParams:
    """Deterministic level counts n_ij = floor(log2(gain_ij)).

    Requires every gain >= 1 so the level counts are nonnegative.
    """
    gains = (p.snr1, p.inr12, p.inr21, p.snr2)
    if any(g < 1.0 for g in gains):
        raise ValueError("to_deterministic requires all gains >= 1 "
                         f"(got {gains})")
    n11, n12, n21, n22 = (math.floor(math.log2(g)) for g in
                          (p.snr1, p.inr12, p.inr21, p.snr2))
    return DeterministicChannelParams(n11=n11, n12=n12, n21=n21, n22=n22)
