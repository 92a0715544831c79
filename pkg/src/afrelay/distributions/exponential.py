"""Distributions built from independent exponential random variables.

Under Rayleigh fading every squared channel gain is exponential, so the
end-to-end analysis reduces to sums, minima and products of exponentials:

- single exponential: pdf, cdf and survival
- sum of two: convolution form, with an equal-mean (Gamma(2)) branch
- minimum of two or more: again exponential, harmonic combination of means
- product of two: K0 pdf and K1-based cdf
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..special import BesselEvalPolicy, DEFAULT_BESSEL_POLICY, bessel_k0, x_k1_complement

EQUAL_MEAN_REL_TOL = 1e-6
"""Relative separation below which two means are treated as equal."""

_GAMMA2_SERIES_CUTOFF = 0.1


@dataclass(frozen=True)
class ExpMean:
    """
    Mean of an exponential random variable.

    For a Rayleigh-faded link this is the average squared channel gain.
    """

    mean: float
    """Positive, finite mean (dimensionless fading power)."""

    def __post_init__(self) -> None:
        """Validate the mean."""
        if not isinstance(self.mean, (int, float)) or isinstance(self.mean, bool):
            raise TypeError(f"mean must be int or float, got {type(self.mean)}")
        if not math.isfinite(self.mean) or self.mean <= 0:
            raise ValueError(f"mean must be positive and finite, got {self.mean}")
        if isinstance(self.mean, int):
            object.__setattr__(self, "mean", float(self.mean))

    @property
    def rate(self) -> float:
        """Rate parameter 1/mean."""
        return 1.0 / self.mean

    def __float__(self) -> float:
        return self.mean


def _mean_of(m: ExpMean | float) -> float:
    if isinstance(m, ExpMean):
        return m.mean
    return ExpMean(m).mean


def _check_argument(name: str, value: float) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise TypeError(f"{name} must be int or float, got {type(value)}")
    value = float(value)
    if math.isnan(value) or value < 0:
        raise ValueError(f"{name} must be non-negative, got {value}")
    return value


def one_minus_exp(x: float) -> float:
    """``1 - exp(-x)`` accurate for x down to the smallest doubles."""
    return -math.expm1(-x)


def _gamma2_cdf(x: float) -> float:
    """``1 - exp(-x)(1 + x)``, the cdf of a Gamma(2, 1) variable."""
    if x < _GAMMA2_SERIES_CUTOFF:
        # sum_{n>=2} (-1)^n (n - 1) x^n / n!
        total = 0.0
        term = x  # x^n / n! at n = 1
        for n in range(2, 30):
            term *= x / n
            contribution = (n - 1) * term
            total += contribution if n % 2 == 0 else -contribution
            if contribution <= 1e-17 * total:
                break
        return total
    return one_minus_exp(x) - x * math.exp(-x)


def _sum2_cdf_series(x: float, y: float) -> float:
    """
    Cdf of ``u + v`` at ``s`` from ``x = s/mu_u``, ``y = s/mu_v``, both small.

    ``sum_{n>=2} (-1)^n x y h_{n-2}(x, y) / n!`` with the complete symmetric
    polynomial ``h_k(x, y) = sum_j x^j y^(k-j)``; every term is positive
    before its sign, so nothing cancels as s goes to zero.
    """
    xy = x * y
    h = 1.0  # h_{n-2}
    x_power = 1.0  # x^{n-2}
    factorial = 2.0  # n!
    total = 0.0
    for n in range(2, 40):
        term = xy * h / factorial
        total += term if n % 2 == 0 else -term
        if term <= 1e-17 * total:
            break
        x_power *= x
        h = y * h + x_power
        factorial *= n + 1
    return total


def _equal_means(a: float, b: float) -> bool:
    return abs(a - b) / max(a, b) < EQUAL_MEAN_REL_TOL


# ---------------------------------------------------------------------------
# Single exponential
# ---------------------------------------------------------------------------


def exp_pdf(u: float, m: ExpMean | float) -> float:
    """
    Probability density of an exponential variable.

    Args:
        u: Non-negative evaluation point
        m: Mean of the variable

    Returns:
        ``(1/mean) exp(-u/mean)``

    Raises:
        ValueError: If u is negative
    """
    mean = _mean_of(m)
    u = _check_argument("u", u)
    return math.exp(-u / mean) / mean


def exp_cdf(u: float, m: ExpMean | float) -> float:
    """Cdf ``1 - exp(-u/mean)``, accurate as u/mean goes to zero."""
    mean = _mean_of(m)
    u = _check_argument("u", u)
    return one_minus_exp(u / mean)


def exp_survival(u: float, m: ExpMean | float) -> float:
    """Survival ``exp(-u/mean)``."""
    mean = _mean_of(m)
    u = _check_argument("u", u)
    return math.exp(-u / mean)


# ---------------------------------------------------------------------------
# Sum of two exponentials
# ---------------------------------------------------------------------------


def sum2_exp_cdf(s: float, mu: ExpMean | float, mv: ExpMean | float) -> float:
    """
    Cdf of the sum of two independent exponentials.

    For distinct means this is the convolution result
    ``{mu_v (1 - e^{-s/mu_v}) - mu_u (1 - e^{-s/mu_u})} / (mu_v - mu_u)``.
    When the means agree to within ``EQUAL_MEAN_REL_TOL`` the Gamma(2) limit
    ``1 - e^{-s/m}(1 + s/m)`` is used instead, since the difference quotient
    loses its digits there. Below a tenth of the smaller mean the leading
    ``s^2 / (2 mu_u mu_v)`` behaviour is summed as a series, because the two
    ``1 - e^{-s/mu}`` terms cancel in their first order.

    Args:
        s: Non-negative evaluation point
        mu: Mean of the first variable
        mv: Mean of the second variable

    Returns:
        Probability in [0, 1]

    Raises:
        ValueError: If s is negative
    """
    a = _mean_of(mu)
    b = _mean_of(mv)
    s = _check_argument("s", s)
    if s == 0.0:
        return 0.0
    if _equal_means(a, b):
        m = 0.5 * (a + b)
        return min(_gamma2_cdf(s / m), 1.0)
    if s < _GAMMA2_SERIES_CUTOFF * min(a, b):
        return _sum2_cdf_series(s / a, s / b)
    value = (b * one_minus_exp(s / b) - a * one_minus_exp(s / a)) / (b - a)
    return min(max(value, 0.0), 1.0)


def sum2_exp_survival(s: float, mu: ExpMean | float, mv: ExpMean | float) -> float:
    """Survival of the sum of two independent exponentials."""
    a = _mean_of(mu)
    b = _mean_of(mv)
    s = _check_argument("s", s)
    if _equal_means(a, b):
        x = s / (0.5 * (a + b))
        return math.exp(-x) * (1.0 + x)
    value = (b * math.exp(-s / b) - a * math.exp(-s / a)) / (b - a)
    return min(max(value, 0.0), 1.0)


def shifted_sum2_exp_cdf(
    z: float, shift: float, mu: ExpMean | float, mv: ExpMean | float
) -> float:
    """
    Cdf of ``u + v + shift`` for a constant non-negative shift.

    A constant right-shift moves the distribution: F_z(z) = F_s(z - shift),
    which is 0 below the shift.
    """
    shift = _check_argument("shift", shift)
    z = _check_argument("z", z)
    if z <= shift:
        return 0.0
    return sum2_exp_cdf(z - shift, mu, mv)


# ---------------------------------------------------------------------------
# Minimum of exponentials
# ---------------------------------------------------------------------------


def minn_exp_mean(*means: ExpMean | float) -> ExpMean:
    """
    Mean of the minimum of independent exponentials.

    The minimum is again exponential with ``1/mu_w = sum_i 1/mu_i``.

    Raises:
        ValueError: If no means are given
    """
    if not means:
        raise ValueError("minn_exp_mean requires at least one mean")
    return ExpMean(1.0 / math.fsum(1.0 / _mean_of(m) for m in means))


def min2_exp_mean(mu: ExpMean | float, mv: ExpMean | float) -> ExpMean:
    """Mean of ``min(u, v)``: ``1/mu_m = 1/mu_u + 1/mu_v``."""
    return minn_exp_mean(mu, mv)


def min2_exp_cdf(m: float, mu: ExpMean | float, mv: ExpMean | float) -> float:
    """Cdf ``1 - exp{-m (1/mu_u + 1/mu_v)}`` of the minimum of two exponentials."""
    a = _mean_of(mu)
    b = _mean_of(mv)
    m = _check_argument("m", m)
    return one_minus_exp(m * (1.0 / a + 1.0 / b))


# ---------------------------------------------------------------------------
# Product of two exponentials
# ---------------------------------------------------------------------------


def _product_argument(y: float, a: float, b: float) -> float:
    return 2.0 * math.sqrt(y / (a * b))


def prod_exp_pdf(
    p: float,
    mu: ExpMean | float,
    mv: ExpMean | float,
    policy: BesselEvalPolicy = DEFAULT_BESSEL_POLICY,
) -> float:
    """
    Density of the product of two independent exponentials.

    ``(1/(mu_u mu_v)) K0(2 sqrt(p / (mu_u mu_v)))``. The density diverges
    logarithmically at the origin, so p = 0 is refused; integrate the cdf
    instead near zero.

    Raises:
        ValueError: If p is not positive
    """
    a = _mean_of(mu)
    b = _mean_of(mv)
    p = _check_argument("p", p)
    if p == 0.0:
        raise ValueError("p must be positive; the product density diverges at 0")
    return bessel_k0(_product_argument(p, a, b), policy) / (a * b)


def prod_exp_cdf(
    y: float,
    mu: ExpMean | float,
    mv: ExpMean | float,
    policy: BesselEvalPolicy = DEFAULT_BESSEL_POLICY,
) -> float:
    """
    Cdf of the product of two independent exponentials.

    ``1 - t K1(t)`` with ``t = 2 sqrt(y / (mu_u mu_v))``, evaluated through
    ``x_k1_complement``.
    """
    a = _mean_of(mu)
    b = _mean_of(mv)
    y = _check_argument("y", y)
    return x_k1_complement(_product_argument(y, a, b), policy)


def prod_exp_small_y_ratio(
    y: float,
    mu: ExpMean | float,
    mv: ExpMean | float,
    policy: BesselEvalPolicy = DEFAULT_BESSEL_POLICY,
) -> float:
    """
    ``F_p(y) / y`` for the product cdf.

    This ratio grows like ``ln(1/y) / (mu_u mu_v)`` as y goes to 0; it has no
    finite limit.

    Raises:
        ValueError: If y is not positive
    """
    y = _check_argument("y", y)
    if y == 0.0:
        raise ValueError("y must be positive")
    return prod_exp_cdf(y, mu, mv, policy) / y

