"""Analytic outage probabilities under the min2, min3 and cut-set bounds."""

from .outage import (
    CLAMP_WARN_THRESHOLD,
    ClampWarning,
    OutageBound,
    OutageQuery,
    cdf_af_min2,
    cdf_af_min3,
    cdf_relay_min2,
    cdf_relay_min3,
    epsilon_outage_rate,
    expected_relay_gain_min2,
    min3_convolution_integral,
    outage_bound,
    outage_cutset,
    outage_min2,
    outage_min3,
)
from .quadrature import (
    DEFAULT_QUADRATURE,
    QuadratureError,
    QuadratureSpec,
    gauss_kronrod_panel,
    integrate_adaptive,
    integrate_sqrt_endpoint,
)

__all__ = [
    # Queries and options
    "OutageQuery",
    "OutageBound",
    "QuadratureSpec",
    "DEFAULT_QUADRATURE",
    # Diagnostics
    "ClampWarning",
    "CLAMP_WARN_THRESHOLD",
    "QuadratureError",
    # min(u, v)
    "cdf_relay_min2",
    "cdf_af_min2",
    "outage_min2",
    # min(u, v, uv SNR)
    "cdf_relay_min3",
    "cdf_af_min3",
    "min3_convolution_integral",
    "outage_min3",
    # Cut-set
    "outage_cutset",
    # Dispatch and derived
    "outage_bound",
    "expected_relay_gain_min2",
    "epsilon_outage_rate",
    # Quadrature
    "integrate_adaptive",
    "integrate_sqrt_endpoint",
    "gauss_kronrod_panel",
]
