"""
afrelay: outage analysis of amplify-and-forward relay networks.

Closed-form and numerically integrated outage probabilities for a
source-relay-destination network under Rayleigh fading, checked against a
seeded, reproducible Monte Carlo oracle.

Core modules:
- special: Modified Bessel functions K0 and K1 and the stable ``1 - x K1(x)``
- distributions: Exponential, sum, minimum and product distributions
- channel: Link statistics, end-to-end gains, bounds and rates
- analytics: Outage probabilities under the min2, min3 and cut-set bounds
- montecarlo: Counter-based sampling, estimators and archived fixtures
- cli: The ``afrelay`` command
"""

from importlib.metadata import version, PackageNotFoundError

try:
    __version__ = version("afrelay")
except PackageNotFoundError:
    __version__ = "0.0.0"

from .special import (
    BesselEvalPolicy,
    bessel_k0,
    bessel_k1,
    x_k1_complement,
)
from .distributions import (
    ExpMean,
    exp_pdf,
    exp_cdf,
    sum2_exp_cdf,
    min2_exp_mean,
    min2_exp_cdf,
    prod_exp_pdf,
    prod_exp_cdf,
)
from .channel import (
    LinkMeans,
    SystemParams,
    FadingDraw,
    relay_gain_alpha,
    relayed_snr,
    total_snr,
    e2e_gain_exact,
    bound_min2,
    bound_min3,
    cutset_gain,
    info_rate,
    gain_threshold,
)
from .analytics import (
    OutageQuery,
    OutageBound,
    QuadratureSpec,
    QuadratureError,
    ClampWarning,
    cdf_relay_min2,
    cdf_af_min2,
    outage_min2,
    cdf_relay_min3,
    cdf_af_min3,
    outage_min3,
    outage_cutset,
    outage_bound,
    epsilon_outage_rate,
)
from .montecarlo import (
    SimPlan,
    Estimate,
    GainKind,
    BoundOrderingError,
    FixtureError,
    sample_fading,
    estimate_outage,
    estimate_mean_gain,
    empirical_cdf,
)

__all__ = [
    "__version__",
    # Special functions
    "BesselEvalPolicy",
    "bessel_k0",
    "bessel_k1",
    "x_k1_complement",
    # Distributions
    "ExpMean",
    "exp_pdf",
    "exp_cdf",
    "sum2_exp_cdf",
    "min2_exp_mean",
    "min2_exp_cdf",
    "prod_exp_pdf",
    "prod_exp_cdf",
    # Channel
    "LinkMeans",
    "SystemParams",
    "FadingDraw",
    "relay_gain_alpha",
    "relayed_snr",
    "total_snr",
    "e2e_gain_exact",
    "bound_min2",
    "bound_min3",
    "cutset_gain",
    "info_rate",
    "gain_threshold",
    # Analytics
    "OutageQuery",
    "OutageBound",
    "QuadratureSpec",
    "QuadratureError",
    "ClampWarning",
    "cdf_relay_min2",
    "cdf_af_min2",
    "outage_min2",
    "cdf_relay_min3",
    "cdf_af_min3",
    "outage_min3",
    "outage_cutset",
    "outage_bound",
    "epsilon_outage_rate",
    # Monte Carlo
    "SimPlan",
    "Estimate",
    "GainKind",
    "BoundOrderingError",
    "FixtureError",
    "sample_fading",
    "estimate_outage",
    "estimate_mean_gain",
    "empirical_cdf",
]
