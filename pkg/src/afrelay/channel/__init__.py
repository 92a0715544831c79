"""Deterministic AF channel algebra: gains, bounds, rates and thresholds."""

from .gain import (
    bound_min2,
    bound_min3,
    cutset_gain,
    e2e_gain_exact,
    relay_gain_alpha,
    relay_term,
    relayed_snr,
    relayed_snr_low_snr_form,
    total_snr,
)
from .links import FadingDraw, LinkMeans, SystemParams
from .rate import (
    cutset_rate,
    db_to_linear,
    gain_threshold,
    info_rate,
    linear_to_db,
    rate_from_gain_threshold,
)

__all__ = [
    "LinkMeans",
    "SystemParams",
    "FadingDraw",
    "relay_gain_alpha",
    "relayed_snr",
    "relayed_snr_low_snr_form",
    "total_snr",
    "relay_term",
    "e2e_gain_exact",
    "bound_min2",
    "bound_min3",
    "cutset_gain",
    "info_rate",
    "gain_threshold",
    "rate_from_gain_threshold",
    "cutset_rate",
    "db_to_linear",
    "linear_to_db",
]
