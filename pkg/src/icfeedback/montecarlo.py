"""Monte-Carlo checks of the two-stage Gaussian feedback schemes.

Two quantities have closed forms worth validating against samples: the
orthogonal (Alamouti-style) combiner of the strong-interference
decode-and-forward scheme, whose interference coefficient vanishes
algebraically, and the stacked receive covariance of the weak-interference
amplify-and-forward scheme, whose determinants give the achievable-rate
log argument.

Complex Gaussians are generated as two independent real normals of
variance 1/2 from numpy's default_rng; the seed fully determines every
stream.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ComplexGains:
    """Direct and cross link gains; |g_d|^2 = SNR, |g_c|^2 = INR."""

    g_d: complex
    g_c: complex

    @classmethod
    def from_snr_inr(cls, snr: float, inr: float,
                     phase_d: float = 0.0, phase_c: float = 0.0):
        if snr < 0 or inr < 0:
            raise ValueError("power gains must be nonnegative")
        return cls(math.sqrt(snr) * cmath.exp(1j * phase_d),
                   math.sqrt(inr) * cmath.exp(1j * phase_c))

    @property
    def snr(self) -> float:
        return abs(self.g_d) ** 2

    @property
    def inr(self) -> float:
        return abs(self.g_c) ** 2


@dataclass(frozen=True)
class McReport:
    """Outcome of one Monte-Carlo check: estimates with standard errors
    next to their analytic references, and a per-quantity verdict."""

    kind: str
    n_samples: int
    seed: int
    estimates: dict    # name -> {"value": float, "stderr": float}
    analytic: dict     # name -> float
    checks: dict       # name -> bool

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> str:
        doc = {
            "kind": self.kind,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "estimates": self.estimates,
            "analytic": self.analytic,
            "checks": self.checks,
            "passed": self.passed,
        }
        return json.dumps(doc, indent=2, sort_keys=True)


def _crandn(rng, n: int) -> np.ndarray:
    return (rng.standard_normal(n) + 1j * rng.standard_normal(n)) \
        * math.sqrt(0.5)


def _mc_tol(analytic: float, stderr: float) -> float:
    # flakiness guard: accept the looser of 5% relative and 4 sigma
    return max(0.05 * abs(analytic), 4.0 * stderr)


def alamouti_coefficients(gains: ComplexGains) -> tuple:
    """Exact post-combining coefficients (on X1, on X2) when the row
    [conj(g_d), -g_c] is applied to the stacked vector
    [Y^(1); conj(Y^(2))] of the strong-interference scheme, where stage 2
    transmits (conj(X2), -conj(X1)).  The X2 coefficient cancels
    identically, not just in expectation."""
    gd, gc = gains.g_d, gains.g_c
    coeff_x1 = gd.conjugate() * gd + gc * gc.conjugate()
    coeff_x2 = gd.conjugate() * gc - gc * gd.conjugate()
    return coeff_x1, coeff_x2


def alamouti_combine_check(gains: ComplexGains, n_samples: int,
                           seed: int) -> McReport:
    """Validate the orthogonal combiner: exact interference cancellation
    and post-combining SINR = SNR + INR estimated from samples."""
    if n_samples < 1:
        raise ValueError("need at least one sample")
    s, i = gains.snr, gains.inr
    coeff_x1, coeff_x2 = alamouti_coefficients(gains)

    rng = np.random.default_rng(seed)
    x1 = _crandn(rng, n_samples)
    x2 = _crandn(rng, n_samples)
    z1 = _crandn(rng, n_samples)
    z2 = _crandn(rng, n_samples)
    gd, gc = gains.g_d, gains.g_c
    y_a = gd * x1 + gc * x2 + z1                      # stage 1
    y_b = gd * np.conj(x2) - gc * np.conj(x1) + z2    # stage 2
    v = np.conj(gd) * y_a - gc * np.conj(y_b)

    signal = coeff_x1 * x1
    resid = v - signal
    # leakage through the combiner is coeff_x2 * X2; the coefficient is
    # an exact floating-point zero (commuted products cancel bitwise)
    leak = coeff_x2 * x2
    sig_pow = np.abs(signal) ** 2
    noise_pow = np.abs(resid) ** 2
    sp, npow = float(sig_pow.mean()), float(noise_pow.mean())
    se_s = float(sig_pow.std(ddof=1)) / math.sqrt(n_samples)
    se_n = float(noise_pow.std(ddof=1)) / math.sqrt(n_samples)
    sinr = sp / npow if npow > 0 else math.inf
    sinr_ref = s + i
    if npow > 0 and sinr_ref > 0:
        se_sinr = sinr * math.sqrt((se_s / sp) ** 2 + (se_n / npow) ** 2)
    else:
        se_sinr = 0.0

    leak_pow = float((np.abs(leak) ** 2).max())
    estimates = {
        "x2_coeff_abs": {"value": abs(coeff_x2), "stderr": 0.0},
        "x1_coeff": {"value": abs(coeff_x1), "stderr": 0.0},
        "sinr": {"value": sinr, "stderr": se_sinr},
        "leak_power_max": {"value": leak_pow, "stderr": 0.0},
    }
    analytic = {
        "x2_coeff_abs": 0.0,
        "x1_coeff": s + i,
        "sinr": sinr_ref,
        "leak_power_max": 0.0,
    }
    checks = {
        "x2_coeff_abs": abs(coeff_x2) <= 1e-12,
        "x1_coeff": abs(abs(coeff_x1) - (s + i)) <= 1e-9 * max(1.0, s + i),
        "sinr": (abs(sinr - sinr_ref) <= _mc_tol(sinr_ref, se_sinr)
                 if sinr_ref > 0 else npow == sp),
        "leak_power_max": leak_pow < 1e-20,
    }
    return McReport("alamouti", n_samples, seed, estimates, analytic, checks)


def af_weak_determinants(snr: float, inr: float) -> tuple:
    """Closed-form determinants of the stacked receive covariance of the
    amplify-and-forward scheme: det K_Y = (1+SNR+INR)^2 - SNR/(1+INR) and
    det K_{Y|X1} = 1 + 2 INR."""
    if snr < 0 or inr < 0:
        raise ValueError("power gains must be nonnegative")
    det_ky = (1.0 + snr + inr) ** 2 - snr / (1.0 + inr)
    det_ky_x1 = 1.0 + 2.0 * inr
    return det_ky, det_ky_x1


def af_weak_covariances(snr: float, inr: float) -> tuple:
    """The 2x2 stacked covariance matrices (K_Y, K_{Y|X1}) themselves,
    with the default real-positive gains.  Their numpy determinants must
    agree with af_weak_determinants; keeping both routes makes the scalar
    formulas checkable against plain linear algebra."""
    s, i = snr, inr
    gd = math.sqrt(s)
    root = math.sqrt(1.0 + i)
    k_y = np.array([[1.0 + s + i, gd / root],
                    [gd / root, 1.0 + s + i]], dtype=complex)
    k_y_x1 = np.array([[1.0 + i, gd * root],
                       [gd * root, s + (2.0 * i + 1.0) / (i + 1.0)]],
                      dtype=complex)
    return k_y, k_y_x1


def af_rate_bits(snr: float, inr: float) -> float:
    """Achievable-rate value of the amplify-and-forward scheme,
    0.5 * log2 of the determinant ratio."""
    det_ky, det_ky_x1 = af_weak_determinants(snr, inr)
    return 0.5 * math.log2(det_ky / det_ky_x1)


def _batch_stderr(values: np.ndarray, batches: int = 10):
    k = values.size // batches
    if k == 0:
        return float(values.mean()), 0.0
    trimmed = values[:k * batches].reshape(batches, k)
    per_batch = trimmed.mean(axis=1)
    return float(values.mean()), float(per_batch.std(ddof=1) / math.sqrt(batches))


def af_weak_mc_check(gains: ComplexGains, n_samples: int,
                     seed: int) -> McReport:
    """Simulate the amplify-and-forward two-stage scheme and compare the
    sample determinants of the stacked receive covariance (with and
    without conditioning on X1) against the closed forms.

    Stage 2 sends the conjugated, sign-flipped interference-plus-noise
    read off stage-1 feedback, scaled by 1/sqrt(1+INR) to keep unit
    transmit power.  Standard errors come from 10 batch means of the
    per-sample determinant contributions.
    """
    if n_samples < 1:
        raise ValueError("need at least one sample")
    s, i = gains.snr, gains.inr
    gd, gc = gains.g_d, gains.g_c
    scale = 1.0 / math.sqrt(1.0 + i)

    rng = np.random.default_rng(seed)
    x1 = _crandn(rng, n_samples)
    x2 = _crandn(rng, n_samples)
    z1a = _crandn(rng, n_samples)
    z2a = _crandn(rng, n_samples)
    z1b = _crandn(rng, n_samples)

    s2 = gc * x2 + z1a            # what feedback hands transmitter 1
    s1 = gc * x1 + z2a            # what feedback hands transmitter 2
    x1b = np.conj(s2) * scale
    x2b = -np.conj(s1) * scale
    y_a = gd * x1 + gc * x2 + z1a
    y_b = gd * x1b + gc * x2b + z1b
    y = np.stack([y_a, np.conj(y_b)])          # 2 x n stacked vector

    def dets(sl):
        yk = y[:, sl]
        xk = x1[sl]
        n = xk.size
        k_y = (yk @ yk.conj().T) / n
        c = (yk @ np.conj(xk)) / n
        vx = float((np.abs(xk) ** 2).mean())
        k_cond = k_y - np.outer(c, np.conj(c)) / vx
        return (float(np.linalg.det(k_y).real),
                float(np.linalg.det(k_cond).real))

    det_y, det_cond = dets(slice(None))
    batches = 10
    k = max(n_samples // batches, 1)
    per_batch = np.array([dets(slice(j * k, (j + 1) * k))
                          for j in range(min(batches, n_samples // k))])
    if per_batch.shape[0] > 1:
        se_y = float(per_batch[:, 0].std(ddof=1) / math.sqrt(per_batch.shape[0]))
        se_c = float(per_batch[:, 1].std(ddof=1) / math.sqrt(per_batch.shape[0]))
    else:
        se_y = se_c = 0.0

    power = np.abs(x1b) ** 2
    p_mean, p_se = _batch_stderr(power)

    ref_y, ref_cond = af_weak_determinants(s, i)
    estimates = {
        "det_ky": {"value": det_y, "stderr": se_y},
        "det_ky_given_x1": {"value": det_cond, "stderr": se_c},
        "stage2_power": {"value": p_mean, "stderr": p_se},
    }
    analytic = {
        "det_ky": ref_y,
        "det_ky_given_x1": ref_cond,
        "stage2_power": 1.0,
        "rate_bits": af_rate_bits(s, i),
    }
    checks = {
        "det_ky": abs(det_y - ref_y) <= _mc_tol(ref_y, se_y),
        "det_ky_given_x1": abs(det_cond - ref_cond) <= _mc_tol(ref_cond, se_c),
        "stage2_power": (abs(p_mean - 1.0) <= max(3.0 * p_se, 1e-12)
                         if i > 0 or s > 0 else True),
    }
    if det_cond > 0:
        estimates["rate_bits"] = {
            "value": 0.5 * math.log2(det_y / det_cond), "stderr": 0.0}
    return McReport("af_weak", n_samples, seed, estimates, analytic, checks)


def af_csv(entries) -> str:
    """CSV rows (snr_db, inr_db, analytic_rate, mc_rate_estimate) from an
    iterable of (snr_db, inr_db, mc_rate) triples."""
    import csv as _csv
    import io as _io
    buf = _io.StringIO()
    writer = _csv.writer(buf, lineterminator="\n")
    writer.writerow(["snr_db", "inr_db", "analytic_rate", "mc_rate_estimate"])
    for sdb, idb, mc_rate in entries:
        s = 10.0 ** (sdb / 10.0)
        i = 10.0 ** (idb / 10.0)
        writer.writerow([format(sdb, "g"), format(idb, "g"),
                         format(af_rate_bits(s, i), ".6f"),
                         format(mc_rate, ".6f")])
    return buf.getvalue()
