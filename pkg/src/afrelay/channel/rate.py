"""Information rate, outage threshold and SNR unit conversion."""

from __future__ import annotations

import math

from .links import SystemParams

_LN2 = math.log(2.0)


def db_to_linear(snr_db: float) -> float:
    """Convert decibels to a linear ratio: ``10^(dB/10)``."""
    value = float(snr_db)
    if not math.isfinite(value):
        raise ValueError(f"snr_db must be finite, got {value}")
    return 10.0 ** (value / 10.0)


def linear_to_db(snr: float) -> float:
    """Convert a positive linear ratio to decibels."""
    value = float(snr)
    if not math.isfinite(value) or value <= 0:
        raise ValueError(f"snr must be positive and finite, got {value}")
    return 10.0 * math.log10(value)


def info_rate(gain: float, snr: float, n_relays: int = 1) -> float:
    """
    Instantaneous mutual information in bits per channel use.

    ``log2(1 + gain SNR) / (1 + M)``: the source message occupies one of the
    M + 1 orthogonal time slots.

    Example:
        >>> info_rate(3.0, 1.0)
        1.0
    """
    gain = float(gain)
    if math.isnan(gain) or gain < 0:
        raise ValueError(f"gain must be non-negative, got {gain}")
    if not snr > 0:
        raise ValueError(f"snr must be positive, got {snr}")
    if n_relays < 1:
        raise ValueError(f"n_relays must be >= 1, got {n_relays}")
    return math.log1p(gain * snr) / _LN2 / (1 + n_relays)


def gain_threshold(sp: SystemParams) -> float:
    """
    Channel-gain threshold mu_th equivalent to the rate threshold.

    ``(2^((M+1) R_th) - 1) / SNR``. The rate falls below R_th exactly when the
    end-to-end gain falls below mu_th. A zero rate threshold gives 0, for
    which the outage probability is 0.

    Example:
        >>> gain_threshold(SystemParams(snr=10.0, rate_threshold=1.0))  # (4 - 1) / 10
        0.3000...
    """
    if sp.rate_threshold == 0.0:
        return 0.0
    return math.expm1((sp.n_relays + 1) * sp.rate_threshold * _LN2) / sp.snr


def rate_from_gain_threshold(mu_th: float, snr: float, n_relays: int = 1) -> float:
    """Inverse of ``gain_threshold``: the rate whose threshold is mu_th."""
    return info_rate(mu_th, snr, n_relays)


def cutset_rate(gamma_sd: float, gamma_sr: float, gamma_rd: float) -> float:
    """
    Cut-set upper bound on the capacity of the relay channel.

    ``min(log2(1 + g_sd + g_sr), log2(1 + g_sd + g_rd)) / 2``, i.e. the
    smaller of the broadcast and multiple-access cuts.
    """
    for name, value in (
        ("gamma_sd", gamma_sd),
        ("gamma_sr", gamma_sr),
        ("gamma_rd", gamma_rd),
    ):
        if math.isnan(value) or value < 0:
            raise ValueError(f"{name} must be non-negative, got {value}")
    broadcast = math.log1p(gamma_sd + gamma_sr)
    multiple_access = math.log1p(gamma_sd + gamma_rd)
    return 0.5 * min(broadcast, multiple_access) / _LN2
