"""Link statistics, system parameters and fading realizations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator

if TYPE_CHECKING:
    from typing import Self


def _positive_float(name: str, value: object) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise TypeError(f"{name} must be int or float, got {type(value)}")
    value = float(value)
    if not math.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be positive and finite, got {value}")
    return value


def _gain(name: str, value: object) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise TypeError(f"{name} must be int or float, got {type(value)}")
    value = float(value)
    if not math.isfinite(value) or value < 0:
        raise ValueError(f"{name} must be non-negative and finite, got {value}")
    return value


@dataclass(frozen=True)
class LinkMeans:
    """
    Average squared channel gains of the three links.

    Under Rayleigh fading each squared gain |h_ij|^2 is exponential with the
    corresponding mean.

    Example:
        >>> means = LinkMeans(mu_sd=1.0, mu_sr=2.0, mu_rd=2.0)
        >>> means.relay_mean
        1.0
    """

    mu_sd: float
    """Mean of |h_sd|^2 (source to destination)."""

    mu_sr: float
    """Mean of |h_sr|^2 (source to relay)."""

    mu_rd: float
    """Mean of |h_rd|^2 (relay to destination)."""

    def __post_init__(self) -> None:
        """Validate link means."""
        for name in ("mu_sd", "mu_sr", "mu_rd"):
            object.__setattr__(self, name, _positive_float(name, getattr(self, name)))

    @classmethod
    def unit(cls) -> Self:
        """All three links with unit mean."""
        return cls(mu_sd=1.0, mu_sr=1.0, mu_rd=1.0)

    @property
    def relay_mean(self) -> float:
        """
        Mean M_r of min(|h_sr|^2, |h_rd|^2).

        ``1/M_r = 1/mu_sr + 1/mu_rd``.
        """
        return 1.0 / (1.0 / self.mu_sr + 1.0 / self.mu_rd)

    def __iter__(self) -> Iterator[float]:
        return iter((self.mu_sd, self.mu_sr, self.mu_rd))

    def __str__(self) -> str:
        return f"LinkMeans(sd={self.mu_sd:g}, sr={self.mu_sr:g}, rd={self.mu_rd:g})"


@dataclass(frozen=True)
class SystemParams:
    """
    Unfaded SNR, relay count and target rate.

    The SNR is the linear ratio P_s / N_0 of the unfaded AWGN channel.
    """

    snr: float
    """Linear SNR (not dB)."""

    n_relays: int = 1
    """Number of relays M."""

    rate_threshold: float = 0.0
    """Target rate R_th in bits per channel use."""

    def __post_init__(self) -> None:
        """Validate system parameters."""
        object.__setattr__(self, "snr", _positive_float("snr", self.snr))
        if not isinstance(self.n_relays, int) or isinstance(self.n_relays, bool):
            raise TypeError(f"n_relays must be int, got {type(self.n_relays)}")
        if self.n_relays < 1:
            raise ValueError(f"n_relays must be >= 1, got {self.n_relays}")
        object.__setattr__(
            self, "rate_threshold", _gain("rate_threshold", self.rate_threshold)
        )

    @classmethod
    def from_db(
        cls, snr_db: float, n_relays: int = 1, rate_threshold: float = 0.0
    ) -> Self:
        """Create from an SNR in decibels."""
        from .rate import db_to_linear

        return cls(
            snr=db_to_linear(snr_db), n_relays=n_relays, rate_threshold=rate_threshold
        )

    @property
    def snr_db(self) -> float:
        """SNR in decibels."""
        from .rate import linear_to_db

        return linear_to_db(self.snr)


@dataclass(frozen=True)
class FadingDraw:
    """
    One realization of the squared channel gains.

    ``h_sr2`` and ``h_rd2`` belong to the first relay; further relays, if any,
    are listed in ``more_hops`` as ``(h_sr2, h_rd2)`` pairs.
    """

    h_sd2: float
    h_sr2: float
    h_rd2: float
    more_hops: tuple[tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        """Validate the realization."""
        for name in ("h_sd2", "h_sr2", "h_rd2"):
            object.__setattr__(self, name, _gain(name, getattr(self, name)))
        hops = tuple(
            (_gain("h_sr2", sr), _gain("h_rd2", rd)) for sr, rd in self.more_hops
        )
        object.__setattr__(self, "more_hops", hops)

    @property
    def n_relays(self) -> int:
        """Number of relays in this realization."""
        return 1 + len(self.more_hops)

    @property
    def hops(self) -> tuple[tuple[float, float], ...]:
        """All ``(h_sr2, h_rd2)`` pairs, first relay first."""
        return ((self.h_sr2, self.h_rd2),) + self.more_hops
