"""Feedback-capacity toolkit for the two-user interference channel.

Computes certified inner/outer bounds for the Gaussian channel, the exact
feedback capacity region of the linear deterministic channel, g.d.o.f.
curves, and bit-exact / Monte-Carlo executions of the feedback schemes
behind those bounds.
"""

from .bounds import (
    GapReport,
    achievable_region,
    outer_region,
    region_gap_report,
    symmetric_achievable_rate,
    symmetric_gap,
    symmetric_outer_bound,
)
from .channel import (
    DeterministicChannelParams,
    GaussianChannelParams,
    SymmetricGaussianParams,
    alpha,
    from_db,
    to_db,
    to_deterministic,
)
from .deterministic import (
    DetRateRegion,
    SchemeTranscript,
    channel_output_det,
    det_capacity_region,
    det_symmetric_rate,
    resource_accounting,
    simulate_af_binary,
    simulate_corner_point,
    simulate_sk_binary,
    simulate_two_stage_strong,
    simulate_two_stage_weak,
)
from .gdof import (
    KramerRootInfo,
    empirical_gdof,
    gdof_feedback,
    gdof_kramer,
    gdof_no_feedback,
    kramer_rho_star,
    kramer_root_info,
    kramer_symmetric_rate,
)
from .geometry import (
    HalfPlaneSystem,
    LinearInequality,
    RateRegion2D,
    contains,
    corner_points,
    fourier_motzkin_eliminate,
    offset_contains,
)
from .montecarlo import (
    ComplexGains,
    McReport,
    af_rate_bits,
    af_weak_determinants,
    af_weak_mc_check,
    alamouti_coefficients,
    alamouti_combine_check,
)

__all__ = [
    "GapReport",
    "achievable_region",
    "outer_region",
    "region_gap_report",
    "symmetric_achievable_rate",
    "symmetric_gap",
    "symmetric_outer_bound",
    "DeterministicChannelParams",
    "GaussianChannelParams",
    "SymmetricGaussianParams",
    "alpha",
    "from_db",
    "to_db",
    "to_deterministic",
    "DetRateRegion",
    "SchemeTranscript",
    "channel_output_det",
    "det_capacity_region",
    "det_symmetric_rate",
    "resource_accounting",
    "simulate_af_binary",
    "simulate_corner_point",
    "simulate_sk_binary",
    "simulate_two_stage_strong",
    "simulate_two_stage_weak",
    "KramerRootInfo",
    "empirical_gdof",
    "gdof_feedback",
    "gdof_kramer",
    "gdof_no_feedback",
    "kramer_rho_star",
    "kramer_root_info",
    "kramer_symmetric_rate",
    "HalfPlaneSystem",
    "LinearInequality",
    "RateRegion2D",
    "contains",
    "corner_points",
    "fourier_motzkin_eliminate",
    "offset_contains",
    "ComplexGains",
    "McReport",
    "af_rate_bits",
    "af_weak_determinants",
    "af_weak_mc_check",
    "alamouti_coefficients",
    "alamouti_combine_check",
]

__version__ = "0.1.0"
