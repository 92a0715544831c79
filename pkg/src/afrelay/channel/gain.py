"""End-to-end SNR and channel gain of the AF relay link, with its upper bounds.

The exact relayed term ``uv / (u + v + 1/SNR)`` is bounded pointwise by
``min(u, v, uv SNR)``, which is in turn bounded by ``min(u, v)``. Adding the
direct path preserves the ordering, and the cut-set gain
``min(h_sd + u, h_sd + v)`` coincides with ``h_sd + min(u, v)``.
"""

from __future__ import annotations

import math

from .links import FadingDraw


def _non_negative(name: str, value: float) -> float:
    value = float(value)
    if math.isnan(value) or value < 0:
        raise ValueError(f"{name} must be non-negative, got {value}")
    return value


def _positive(name: str, value: float) -> float:
    value = float(value)
    if math.isnan(value) or value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def relay_gain_alpha(
    p_relay: float, p_source: float, h_sr2: float, noise_var: float
) -> float:
    """
    Amplification factor that gives the relay a transmit power of ``p_relay``.

    ``alpha = sqrt(P_r / (P_s |h_sr|^2 + sigma^2))``

    Args:
        p_relay: Relay transmit power
        p_source: Source transmit power
        h_sr2: Squared source-relay channel gain
        noise_var: Noise variance at the relay

    Returns:
        Positive gain factor

    Raises:
        ValueError: If a power or the noise variance is not positive

    Example:
        >>> relay_gain_alpha(1.0, 1.0, 3.0, 1.0)
        0.5
    """
    p_relay = _positive("p_relay", p_relay)
    p_source = _positive("p_source", p_source)
    noise_var = _positive("noise_var", noise_var)
    h_sr2 = _non_negative("h_sr2", h_sr2)
    return math.sqrt(p_relay / (p_source * h_sr2 + noise_var))


def relayed_snr(gamma_sr: float, gamma_rd: float) -> float:
    """
    Instantaneous SNR of the relayed signal at the destination.

    ``gamma_sr gamma_rd / (gamma_sr + gamma_rd + 1)``; zero if either hop is dead.
    """
    gamma_sr = _non_negative("gamma_sr", gamma_sr)
    gamma_rd = _non_negative("gamma_rd", gamma_rd)
    if gamma_sr == 0.0 or gamma_rd == 0.0:
        return 0.0
    return gamma_sr * gamma_rd / (gamma_sr + gamma_rd + 1.0)


def relayed_snr_low_snr_form(gamma_sr: float, gamma_rd: float) -> float:
    """
    The relayed SNR written as ``1 / (1/g_sr + 1/g_rd + 1/(g_sr g_rd))``.

    Algebraically equal to ``relayed_snr``. The third reciprocal dominates
    when both hop SNRs are small, which is why ``min(u, v)`` alone is a poor
    bound at low SNR.
    """
    gamma_sr = _non_negative("gamma_sr", gamma_sr)
    gamma_rd = _non_negative("gamma_rd", gamma_rd)
    if gamma_sr == 0.0 or gamma_rd == 0.0:
        return 0.0
    return 1.0 / (1.0 / gamma_sr + 1.0 / gamma_rd + 1.0 / (gamma_sr * gamma_rd))


def total_snr(gamma_sd: float, hops: list[tuple[float, float]]) -> float:
    """
    SNR at the output of the maximum ratio combiner.

    The direct-path SNR plus the relayed SNR of every relay.

    Args:
        gamma_sd: Direct-path SNR
        hops: ``(gamma_sr, gamma_rd)`` for each relay

    Returns:
        Combined SNR
    """
    gamma_sd = _non_negative("gamma_sd", gamma_sd)
    return gamma_sd + math.fsum(relayed_snr(sr, rd) for sr, rd in hops)


def relay_term(h_sr2: float, h_rd2: float, snr: float) -> float:
    """Relayed gain ``uv / (u + v + 1/SNR)``; 0 when both gains are 0."""
    if h_sr2 == 0.0 and h_rd2 == 0.0:
        return 0.0
    return h_sr2 * h_rd2 / (h_sr2 + h_rd2 + 1.0 / snr)


def e2e_gain_exact(d: FadingDraw, snr: float) -> float:
    """
    Instantaneous end-to-end channel gain of single-relay AF.

    ``|h_sd|^2 + |h_sr|^2 |h_rd|^2 / (|h_sr|^2 + |h_rd|^2 + 1/SNR)``

    Raises:
        ValueError: If snr is not positive or the draw has more than one relay
    """
    snr = _positive("snr", snr)
    if d.more_hops:
        raise ValueError(
            f"e2e_gain_exact is single-relay only, draw has {d.n_relays} relays; "
            "use total_snr for several relays"
        )
    return d.h_sd2 + relay_term(d.h_sr2, d.h_rd2, snr)


def bound_min2(d: FadingDraw) -> float:
    """Bottleneck bound ``|h_sd|^2 + min(|h_sr|^2, |h_rd|^2)``."""
    return d.h_sd2 + min(d.h_sr2, d.h_rd2)


def bound_min3(d: FadingDraw, snr: float) -> float:
    """
    Tighter bound ``|h_sd|^2 + min(|h_sr|^2, |h_rd|^2, |h_sr|^2 |h_rd|^2 SNR)``.

    The product term takes over at low SNR, where ``min(u, v)`` overstates
    the relayed gain.
    """
    snr = _positive("snr", snr)
    return d.h_sd2 + min(d.h_sr2, d.h_rd2, d.h_sr2 * d.h_rd2 * snr)


def cutset_gain(d: FadingDraw) -> float:
    """Cut-set gain ``min(|h_sd|^2 + |h_sr|^2, |h_sd|^2 + |h_rd|^2)``."""
    return min(d.h_sd2 + d.h_sr2, d.h_sd2 + d.h_rd2)
