"""Closed-form cdfs and outage probabilities of the AF end-to-end gain.

Three analytic approximations of the end-to-end gain are available:

- ``MIN2``: ``|h_sd|^2 + min(u, v)``. Its cdf is exact for that gain, because
  the minimum of independent exponentials is exponential with mean M_r.
- ``MIN3``: ``|h_sd|^2 + min(u, v, uv SNR)``. The relay-hop cdf multiplies the
  three survival probabilities as if the events were independent, and the
  end-to-end cdf needs a numerical convolution.
- ``CUTSET``: ``min(|h_sd|^2 + u, |h_sd|^2 + v)``. The outage is the product of
  the two sum survivals, which ignores the shared direct path.

All evaluators return probabilities clamped into [0, 1]; a clamp larger than
1e-9 raises a ``ClampWarning``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

from ..channel import LinkMeans, SystemParams, gain_threshold
from ..distributions import (
    min2_exp_cdf,
    one_minus_exp,
    sum2_exp_cdf,
)
from ..special import x_k1_complement
from .quadrature import DEFAULT_QUADRATURE, QuadratureSpec, integrate_sqrt_endpoint

if TYPE_CHECKING:
    from typing import Self

CLAMP_WARN_THRESHOLD = 1e-9

_SUBSTITUTION_BESSEL_ARGUMENT = 0.2
"""Bessel argument below which the low-y substitution is applied."""


class ClampWarning(RuntimeWarning):
    """A computed probability fell outside [0, 1] by more than rounding."""


class OutageBound(Enum):
    """Analytic approximation of the end-to-end gain."""

    MIN2 = "min2"
    """``|h_sd|^2 + min(u, v)``."""

    MIN3 = "min3"
    """``|h_sd|^2 + min(u, v, uv SNR)``."""

    CUTSET = "cutset"
    """``min(|h_sd|^2 + u, |h_sd|^2 + v)``."""

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class OutageQuery:
    """
    Link statistics, SNR and gain threshold for one outage evaluation.

    ``mu_th`` is the channel-gain threshold; build it from a rate threshold
    with ``OutageQuery.from_system``.
    """

    means: LinkMeans
    snr: float
    mu_th: float

    def __post_init__(self) -> None:
        """Validate the query."""
        if not isinstance(self.means, LinkMeans):
            raise TypeError(f"means must be LinkMeans, got {type(self.means)}")
        snr = float(self.snr)
        if not math.isfinite(snr) or snr <= 0:
            raise ValueError(f"snr must be positive and finite, got {self.snr}")
        mu_th = float(self.mu_th)
        if math.isnan(mu_th) or mu_th < 0:
            raise ValueError(f"mu_th must be non-negative, got {self.mu_th}")
        object.__setattr__(self, "snr", snr)
        object.__setattr__(self, "mu_th", mu_th)

    @classmethod
    def from_system(cls, means: LinkMeans, sp: SystemParams) -> Self:
        """Create a query whose threshold corresponds to ``sp.rate_threshold``."""
        return cls(means=means, snr=sp.snr, mu_th=gain_threshold(sp))


def _clamp_probability(value: float, label: str) -> float:
    if 0.0 <= value <= 1.0:
        return value
    clamped = min(max(value, 0.0), 1.0)
    if abs(value - clamped) > CLAMP_WARN_THRESHOLD:
        warnings.warn(
            f"{label} evaluated to {value!r}; clamped to {clamped}",
            ClampWarning,
            stacklevel=3,
        )
    return clamped


def _check_mu(mu: float) -> float:
    mu = float(mu)
    if math.isnan(mu) or mu < 0:
        raise ValueError(f"mu must be non-negative, got {mu}")
    return mu


def _check_snr(snr: float) -> float:
    snr = float(snr)
    if math.isnan(snr) or snr <= 0:
        raise ValueError(f"snr must be positive, got {snr}")
    return snr


def _bessel_argument(y: float, means: LinkMeans, snr: float) -> float:
    """``t(y) = 2 sqrt((y / SNR) / (mu_sr mu_rd))``."""
    return 2.0 * math.sqrt(y / (snr * means.mu_sr * means.mu_rd))


# ---------------------------------------------------------------------------
# min(u, v)
# ---------------------------------------------------------------------------


def cdf_relay_min2(mu: float, means: LinkMeans) -> float:
    """
    Cdf of ``min(|h_sr|^2, |h_rd|^2)``: ``1 - exp(-mu / M_r)``.

    Exact, since the two hop gains are independent.
    """
    mu = _check_mu(mu)
    return _clamp_probability(
        min2_exp_cdf(mu, means.mu_sr, means.mu_rd), "cdf_relay_min2"
    )


def cdf_af_min2(mu: float, means: LinkMeans) -> float:
    """
    Cdf of ``|h_sd|^2 + min(|h_sr|^2, |h_rd|^2)``.

    The sum of two exponentials with means ``mu_sd`` and ``M_r``; the
    equal-mean branch applies when they coincide.
    """
    mu = _check_mu(mu)
    return _clamp_probability(
        sum2_exp_cdf(mu, means.mu_sd, means.relay_mean), "cdf_af_min2"
    )


def outage_min2(q: OutageQuery) -> float:
    """Outage probability under the ``min(u, v)`` bound."""
    return cdf_af_min2(q.mu_th, q.means)


# ---------------------------------------------------------------------------
# min(u, v, uv SNR)
# ---------------------------------------------------------------------------


def cdf_relay_min3(mu: float, means: LinkMeans, snr: float) -> float:
    """
    Approximate cdf of ``min(|h_sr|^2, |h_rd|^2, |h_sr|^2 |h_rd|^2 SNR)``.

    ``1 - exp(-mu / M_r) t K1(t)`` with ``t = 2 sqrt((mu/SNR) / (mu_sr mu_rd))``.
    The three survival probabilities are multiplied as if independent,
    although the product event shares u and v with the other two.

    Evaluated as ``(1 - e^{-mu/M_r}) + e^{-mu/M_r} (1 - t K1(t))`` so that no
    difference of nearly equal numbers is formed.

    Raises:
        ValueError: If mu is negative or snr is not positive
    """
    mu = _check_mu(mu)
    snr = _check_snr(snr)
    if mu == 0.0:
        return 0.0
    a = mu * (1.0 / means.mu_sr + 1.0 / means.mu_rd)
    value = one_minus_exp(a) + math.exp(-a) * x_k1_complement(
        _bessel_argument(mu, means, snr)
    )
    return _clamp_probability(value, "cdf_relay_min3")


def min3_convolution_integral(
    mu: float,
    means: LinkMeans,
    snr: float,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """
    ``int_0^mu exp(-y (1/M_r - 1/mu_sd)) t(y) K1(t(y)) dy``.

    The convolution integral of the min3 end-to-end cdf, returned on its own
    for comparison with independent quadrature.

    Raises:
        QuadratureError: If the integral does not converge
    """
    mu = _check_mu(mu)
    snr = _check_snr(snr)
    decay = 1.0 / means.relay_mean - 1.0 / means.mu_sd
    split = _substitution_split(mu, means, snr)

    def integrand(y: float) -> float:
        t = _bessel_argument(y, means, snr)
        return math.exp(-y * decay) * (1.0 - x_k1_complement(t))

    value, _ = integrate_sqrt_endpoint(integrand, 0.0, mu, split, quad)
    return value


def _substitution_split(mu: float, means: LinkMeans, snr: float) -> float:
    # y at which t(y) reaches _SUBSTITUTION_BESSEL_ARGUMENT
    y_small = (0.5 * _SUBSTITUTION_BESSEL_ARGUMENT) ** 2 * snr * means.mu_sr * means.mu_rd
    return min(mu, y_small)


def cdf_af_min3(
    mu: float,
    means: LinkMeans,
    snr: float,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """
    Cdf of ``|h_sd|^2 + min(u, v, uv SNR)`` with the approximate relay cdf.

    The convolution
    ``1 - e^{-mu/mu_sd} - (1/mu_sd) e^{-mu/mu_sd} int_0^mu e^{-y(1/M_r - 1/mu_sd)} t K1(t) dy``
    is split into the closed-form min2 cdf plus a non-negative excess,
    ``(1/mu_sd) int_0^mu e^{-(mu - y)/mu_sd} e^{-y/M_r} (1 - t K1(t)) dy``, which is
    what the adaptive quadrature evaluates. The excess vanishes as SNR grows,
    so the result never falls below ``cdf_af_min2`` and tends to it at high SNR.

    Args:
        mu: Gain threshold
        means: Link means
        snr: Linear SNR
        quad: Quadrature tolerances

    Returns:
        Probability in [0, 1]

    Raises:
        ValueError: If mu is negative or snr is not positive
        QuadratureError: If the integral does not converge
    """
    mu = _check_mu(mu)
    snr = _check_snr(snr)
    if mu == 0.0:
        return 0.0
    inv_sd = 1.0 / means.mu_sd
    inv_r = 1.0 / means.relay_mean
    split = _substitution_split(mu, means, snr)

    def excess(y: float) -> float:
        t = _bessel_argument(y, means, snr)
        return inv_sd * math.exp(-(mu - y) * inv_sd - y * inv_r) * x_k1_complement(t)

    base = sum2_exp_cdf(mu, means.mu_sd, means.relay_mean)
    extra, _ = integrate_sqrt_endpoint(excess, 0.0, mu, split, quad)
    return _clamp_probability(base + extra, "cdf_af_min3")


def outage_min3(q: OutageQuery, quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Outage probability under the ``min(u, v, uv SNR)`` bound."""
    return cdf_af_min3(q.mu_th, q.means, q.snr, quad)


# ---------------------------------------------------------------------------
# Cut-set bound
# ---------------------------------------------------------------------------


def outage_cutset(q: OutageQuery) -> float:
    """
    Outage probability from the cut-set gain, ``1 - S_sr(mu_th) S_rd(mu_th)``.

    ``S_x`` is the survival of ``|h_sd|^2 + |h_x|^2``. Both sums contain the
    same direct-path gain, so treating the two survivals as independent is
    itself an approximation. Evaluated as ``F_sr + F_rd - F_sr F_rd``.
    """
    mu = q.mu_th
    f_sr = sum2_exp_cdf(mu, q.means.mu_sd, q.means.mu_sr)
    f_rd = sum2_exp_cdf(mu, q.means.mu_sd, q.means.mu_rd)
    return _clamp_probability(f_sr + f_rd - f_sr * f_rd, "outage_cutset")


# ---------------------------------------------------------------------------
# Dispatch and derived quantities
# ---------------------------------------------------------------------------


def outage_bound(
    q: OutageQuery,
    bound: OutageBound,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Outage probability under the selected analytic approximation."""
    match bound:
        case OutageBound.MIN2:
            return outage_min2(q)
        case OutageBound.MIN3:
            return outage_min3(q, quad)
        case OutageBound.CUTSET:
            return outage_cutset(q)
    raise ValueError(f"Unsupported bound: {bound!r}")


def expected_relay_gain_min2(means: LinkMeans) -> float:
    """Analytic ``E[min(|h_sr|^2, |h_rd|^2)] = M_r``."""
    return means.relay_mean


def epsilon_outage_rate(
    means: LinkMeans, snr: float, epsilon: float, n_relays: int = 1
) -> float:
    """
    Largest rate whose ``min(u, v)``-bound outage does not exceed epsilon.

    The min2 cdf is inverted by bisection on the gain threshold and the
    threshold is mapped back to a rate with ``log2(1 + mu_th SNR) / (M + 1)``.

    Args:
        means: Link means
        snr: Linear SNR
        epsilon: Target outage probability, strictly between 0 and 1
        n_relays: Number of relays M

    Returns:
        Rate in bits per channel use
    """
    snr = _check_snr(snr)
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    if n_relays < 1:
        raise ValueError(f"n_relays must be >= 1, got {n_relays}")

    lo, hi = 0.0, means.mu_sd + means.relay_mean
    while cdf_af_min2(hi, means) < epsilon:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if cdf_af_min2(mid, means) <= epsilon:
            lo = mid
        else:
            hi = mid
    return math.log1p(lo * snr) / math.log(2.0) / (n_relays + 1)
