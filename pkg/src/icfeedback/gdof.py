"""Generalized degrees-of-freedom curves for the symmetric interference
channel, with and without feedback, plus the correlated-input scheme of
Kramer evaluated both asymptotically (piecewise curve) and at finite SNR
(quartic stationarity condition).

d(alpha) is the high-SNR slope of the symmetric rate normalized by
log2(SNR), with INR = SNR^alpha.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

QUARTIC_BRACKET_STEP = 1e-3
QUARTIC_BISECT_TOL = 1e-12


def gdof_feedback(alpha: float) -> float:
    """Feedback symmetric g.d.o.f.: the V-curve max(1 - alpha/2, alpha/2)."""
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    return max(1.0 - alpha / 2.0, alpha / 2.0)


def gdof_no_feedback(alpha: float) -> float:
    """Non-feedback symmetric g.d.o.f.: the W-curve.

    Closed form from the non-feedback interference-channel literature
    (external-known formula; not re-derived here):
        1 - alpha   on [0, 1/2]
        alpha       on [1/2, 2/3]
        1 - alpha/2 on [2/3, 1]
        alpha/2     on [1, 2]
        1           on [2, inf)
    Adjacent pieces agree at the breakpoints.
    """
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    if alpha <= 0.5:
        return 1.0 - alpha
    if alpha <= 2.0 / 3.0:
        return alpha
    if alpha <= 1.0:
        return 1.0 - alpha / 2.0
    if alpha <= 2.0:
        return alpha / 2.0
    return 1.0


def gdof_kramer(alpha: float) -> float:
    """Asymptotic g.d.o.f. of Kramer's correlated-input scheme:
    1 - alpha on [0, 1/3); (3 - alpha)/4 on [1/3, 1); (1 + alpha)/4 on
    [1, inf).  Continuous at both breakpoints."""
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    if alpha < 1.0 / 3.0:
        return 1.0 - alpha
    if alpha < 1.0:
        return (3.0 - alpha) / 4.0
    return (1.0 + alpha) / 4.0


def kramer_quartic_coeffs(snr: float, alpha: float) -> list:
    """Coefficients [c4, c3, c2, c1, c0] of the stationarity quartic in
    rho for the Kramer-scheme rate at finite SNR:

        2A rho^4 + S^a rho^3 - 4(A+B) rho^2 - (2 + S + 2 S^a) rho
          + 2(A+B) = 0,
    with A = S^((3a+1)/2), B = S^((a+1)/2).
    """
    s = float(snr)
    a = s ** ((3.0 * alpha + 1.0) / 2.0)
    b = s ** ((alpha + 1.0) / 2.0)
    sa = s ** alpha
    return [2.0 * a, sa, -4.0 * (a + b), -(2.0 + s + 2.0 * sa), 2.0 * (a + b)]


@dataclass(frozen=True)
class KramerRootInfo:
    rho: float
    multiple_roots: bool
    residual: float


def _quartic_roots_in_unit_interval(coeffs) -> list:
    f = lambda r: float(np.polyval(coeffs, r))
    roots = []
    n = int(round(1.0 / QUARTIC_BRACKET_STEP))
    xs = np.linspace(0.0, 1.0, n + 1)
    vals = np.polyval(coeffs, xs)
    for k in range(n):
        lo, hi = float(xs[k]), float(xs[k + 1])
        flo, fhi = float(vals[k]), float(vals[k + 1])
        if flo == 0.0:
            if 0.0 < lo < 1.0:
                roots.append(lo)
            continue
        if flo * fhi < 0.0:
            while hi - lo > QUARTIC_BISECT_TOL:
                mid = 0.5 * (lo + hi)
                fm = f(mid)
                if fm == 0.0:
                    lo = hi = mid
                    break
                if flo * fm < 0.0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            roots.append(0.5 * (lo + hi))
    return roots


def kramer_root_info(snr: float, alpha: float) -> KramerRootInfo:
    """All-roots variant of kramer_rho_star: flags when the bracketing
    scan finds more than one root in (0, 1) and reports the quartic
    residual at the returned root, normalized by the largest coefficient
    magnitude."""
    if snr <= 1:
        raise ValueError("snr must exceed 1")
    coeffs = kramer_quartic_coeffs(snr, alpha)
    roots = _quartic_roots_in_unit_interval(coeffs)
    if not roots:
        raise ValueError("no root of the rate quartic in (0, 1)")
    if len(roots) > 1:
        rho = max(roots, key=lambda r: _kramer_rate_at(snr, alpha, r))
    else:
        rho = roots[0]
    residual = abs(float(np.polyval(coeffs, rho))) / max(abs(c) for c in coeffs)
    return KramerRootInfo(rho, len(roots) > 1, residual)


def kramer_rho_star(snr: float, alpha: float) -> float:
    """Input correlation maximizing the Kramer-scheme symmetric rate;
    the root in (0,1) of the stationarity quartic, found by sign-change
    bracketing at 1e-3 then bisection to 1e-12."""
    return kramer_root_info(snr, alpha).rho


def _kramer_rate_at(snr: float, alpha: float, rho: float) -> float:
    s = float(snr)
    sa = s ** alpha
    num = 1.0 + s + sa + 2.0 * rho * s ** ((alpha + 1.0) / 2.0)
    den = 1.0 + (1.0 - rho * rho) * sa
    return math.log2(num / den)


def kramer_symmetric_rate(snr: float, alpha: float) -> float:
    """Finite-SNR symmetric rate of Kramer's scheme at the optimal
    correlation.  Small-SNR values can differ noticeably from the
    asymptotic pieces of gdof_kramer; the quartic root is exact, the
    pieces are limits."""
    rho = kramer_rho_star(snr, alpha)
    return _kramer_rate_at(snr, alpha, rho)


def empirical_gdof(rate_fn, alpha: float, snr_list) -> list:
    """Normalized rates [(snr, rate_fn(snr, snr**alpha)/log2(snr)), ...]
    for checking convergence toward an analytic curve.  rate_fn takes
    (snr, inr) linear gains and returns bits."""
    snrs = [float(s) for s in snr_list]
    if any(s <= 1.0 for s in snrs):
        raise ValueError("every snr must exceed 1")
    if any(b <= a for a, b in zip(snrs, snrs[1:])):
        raise ValueError("snr list must be strictly increasing")
    return [(s, rate_fn(s, s ** alpha) / math.log2(s)) for s in snrs]


CURVES = {
    "fb": gdof_feedback,
    "no": gdof_no_feedback,
    "kramer": gdof_kramer,
}


def gdof_csv(curves, step: float = 0.01, alpha_max: float = 3.0) -> str:
    """CSV of (alpha, one column per requested curve) over [0, alpha_max]."""
    names = list(curves)
    for name in names:
        if name not in CURVES:
            raise ValueError(f"unknown curve {name!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["alpha"] + [f"d_{n}" for n in names])
    n = int(round(alpha_max / step))
    for k in range(n + 1):
        a = k * step
        writer.writerow([format(a, ".10g")]
                        + [format(CURVES[name](a), ".10g") for name in names])
    return buf.getvalue()


def finite_snr_csv(snr: float, alphas) -> str:
    """CSV of (alpha, kramer_rate, kramer_rate/log2 snr) at fixed SNR for
    comparing the finite-SNR scheme against the asymptotic curves."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["alpha", "kramer_rate", "kramer_normalized"])
    log_s = math.log2(snr)
    for a in alphas:
        r = kramer_symmetric_rate(snr, float(a))
        writer.writerow([format(float(a), ".10g"), format(r, ".10g"),
                         format(r / log_s, ".10g")])
    return buf.getvalue()
