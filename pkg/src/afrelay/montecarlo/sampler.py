"""Seeded Monte Carlo estimates of outage probabilities and expected gains.

Draws are produced in fixed blocks of ``BLOCK_SIZE`` samples. Sample ``i``
uses counters ``stride * i .. stride * i + stride - 1`` with
``stride = 1 + 2M``: the direct link first, then ``(h_sr, h_rd)`` per relay.
A plan's ``n_streams`` workers each take a contiguous run of whole blocks;
per-block partial results are combined in block order with exact summation,
so every estimate is bit-identical whatever the number of streams.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence, TypeVar

import numpy as np

from ..channel import FadingDraw, LinkMeans
from .rng import MASK64, CounterStream, derive_key

BLOCK_SIZE = 65_536
"""Samples per block; the unit of work assigned to streams."""

T = TypeVar("T")


class BoundOrderingError(AssertionError):
    """A draw violated ``exact <= min3 <= min2 == cutset``."""

    def __init__(self, message: str, draw: FadingDraw, snr: float) -> None:
        self.draw = draw
        self.snr = snr
        super().__init__(f"{message} at snr={snr!r}: {draw}")


class GainKind(Enum):
    """Which gain a Monte Carlo estimate is computed for."""

    EXACT = "exact"
    """Exact end-to-end gain, direct path plus relayed term(s)."""

    MIN2 = "min2"
    """``|h_sd|^2 + min(u, v)``."""

    MIN3 = "min3"
    """``|h_sd|^2 + min(u, v, uv SNR)``."""

    CUTSET = "cutset"
    """``min(|h_sd|^2 + u, |h_sd|^2 + v)``."""

    EXACT_RELAY = "exact_relay"
    """Relayed term ``uv / (u + v + 1/SNR)`` alone."""

    MIN2_RELAY = "min2_relay"
    """``min(u, v)`` alone."""

    MIN3_RELAY = "min3_relay"
    """``min(u, v, uv SNR)`` alone."""

    def __str__(self) -> str:
        return self.value

    @property
    def relay_only(self) -> bool:
        """True for kinds without the direct path."""
        return self.value.endswith("_relay")

    @property
    def multi_relay(self) -> bool:
        """True for kinds defined for more than one relay."""
        return self in (GainKind.EXACT, GainKind.EXACT_RELAY)


@dataclass(frozen=True)
class SimPlan:
    """
    Seed, sample count and parallelism of a Monte Carlo run.

    Example:
        >>> plan = SimPlan(master_seed=1, n_samples=10**6, n_streams=4)
    """

    master_seed: int = 1
    """64-bit unsigned master seed."""

    n_samples: int = 1_000_000
    """Number of fading draws."""

    n_streams: int = 1
    """Number of parallel workers; does not change the result."""

    n_relays: int = 1
    """Relays per draw."""

    audit: bool = False
    """Check the pointwise bound ordering on every draw."""

    def __post_init__(self) -> None:
        """Validate the plan."""
        for name in ("master_seed", "n_samples", "n_streams", "n_relays"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise TypeError(f"{name} must be int, got {type(value)}")
        if not 0 <= self.master_seed <= MASK64:
            raise ValueError(
                f"master_seed must be a 64-bit unsigned int, got {self.master_seed}"
            )
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be >= 1, got {self.n_samples}")
        if self.n_streams < 1:
            raise ValueError(f"n_streams must be >= 1, got {self.n_streams}")
        if self.n_streams > self.n_samples:
            raise ValueError(
                f"n_streams must be <= n_samples, got {self.n_streams} > {self.n_samples}"
            )
        if self.n_relays < 1:
            raise ValueError(f"n_relays must be >= 1, got {self.n_relays}")

    @property
    def stride(self) -> int:
        """Counters consumed per sample."""
        return 1 + 2 * self.n_relays


@dataclass(frozen=True)
class Estimate:
    """
    Monte Carlo estimate with its standard error.

    ``std_error`` is ``sqrt(s^2 / n)`` from the per-sample variance (the
    binomial variance for outage probabilities).
    """

    value: float
    std_error: float
    n: int
    master_seed: int

    def within(self, expected: float, n_se: float = 4.0, slack: float = 0.0) -> bool:
        """True if ``|value - expected| <= n_se * std_error + slack``."""
        return abs(self.value - expected) <= n_se * self.std_error + slack

    def __str__(self) -> str:
        return f"{self.value:.6g} ± {self.std_error:.2g} (n={self.n})"


@dataclass(frozen=True, eq=False)
class FadingSample:
    """
    A batch of fading draws as arrays.

    ``h_sd2`` has shape ``(n,)``; ``h_sr2`` and ``h_rd2`` have shape
    ``(n, n_relays)``.
    """

    h_sd2: np.ndarray
    h_sr2: np.ndarray
    h_rd2: np.ndarray

    def __len__(self) -> int:
        return int(self.h_sd2.shape[0])

    @property
    def n_relays(self) -> int:
        """Relays per draw."""
        return int(self.h_sr2.shape[1])

    def draw(self, index: int) -> FadingDraw:
        """The ``index``-th draw as a ``FadingDraw``."""
        hops = tuple(
            (float(sr), float(rd))
            for sr, rd in zip(self.h_sr2[index, 1:], self.h_rd2[index, 1:])
        )
        return FadingDraw(
            h_sd2=float(self.h_sd2[index]),
            h_sr2=float(self.h_sr2[index, 0]),
            h_rd2=float(self.h_rd2[index, 0]),
            more_hops=hops,
        )


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def _exponential(mean: float, r: np.ndarray) -> np.ndarray:
    # inverse cdf: u = -mean ln(1 - r), r in [0, 1)
    return -mean * np.log1p(-r)


def sample_fading_batch(
    means: LinkMeans, stream: CounterStream, n: int, n_relays: int = 1
) -> FadingSample:
    """
    Draw ``n`` independent fading realizations from a stream.

    Every squared gain is exponential with its link mean, produced by the
    inverse-cdf transform. All relays share the same link means.
    """
    stride = 1 + 2 * n_relays
    r = stream.uniform(n * stride).reshape(n, stride)
    return FadingSample(
        h_sd2=_exponential(means.mu_sd, r[:, 0]),
        h_sr2=_exponential(means.mu_sr, r[:, 1::2]),
        h_rd2=_exponential(means.mu_rd, r[:, 2::2]),
    )


def sample_fading(means: LinkMeans, stream: CounterStream) -> FadingDraw:
    """Draw one single-relay fading realization."""
    return sample_fading_batch(means, stream, 1).draw(0)


def gains(sample: FadingSample, kind: GainKind, snr: float) -> np.ndarray:
    """
    Per-draw gain of the selected kind.

    Raises:
        ValueError: If snr is not positive, or a single-relay kind is asked
            for a multi-relay sample
    """
    if not snr > 0:
        raise ValueError(f"snr must be positive, got {snr}")
    if sample.n_relays > 1 and not kind.multi_relay:
        raise ValueError(f"{kind} is defined for a single relay only")

    sr = sample.h_sr2
    rd = sample.h_rd2
    match kind:
        case GainKind.EXACT | GainKind.EXACT_RELAY:
            relay = np.sum(sr * rd / (sr + rd + 1.0 / snr), axis=1)
        case GainKind.MIN2 | GainKind.MIN2_RELAY:
            relay = np.minimum(sr, rd)[:, 0]
        case GainKind.MIN3 | GainKind.MIN3_RELAY:
            relay = np.minimum(np.minimum(sr, rd), sr * rd * snr)[:, 0]
        case GainKind.CUTSET:
            return np.minimum(sample.h_sd2 + sr[:, 0], sample.h_sd2 + rd[:, 0])
        case _:
            raise ValueError(f"Unsupported gain kind: {kind!r}")
    if kind.relay_only:
        return relay
    return sample.h_sd2 + relay


def check_bound_ordering(sample: FadingSample, snr: float) -> dict[str, int]:
    """
    Count draws violating the pointwise bound chain.

    Returns:
        Violation counts for ``exact <= min3``, ``min3 <= min2`` and
        ``cutset == min2``
    """
    exact = gains(sample, GainKind.EXACT, snr)
    min3 = gains(sample, GainKind.MIN3, snr)
    min2 = gains(sample, GainKind.MIN2, snr)
    cutset = gains(sample, GainKind.CUTSET, snr)
    return {
        "exact_le_min3": int(np.count_nonzero(exact > min3)),
        "min3_le_min2": int(np.count_nonzero(min3 > min2)),
        "cutset_eq_min2": int(np.count_nonzero(cutset != min2)),
    }


def _audit(sample: FadingSample, snr: float) -> None:
    exact = gains(sample, GainKind.EXACT, snr)
    min3 = gains(sample, GainKind.MIN3, snr)
    min2 = gains(sample, GainKind.MIN2, snr)
    cutset = gains(sample, GainKind.CUTSET, snr)
    for label, bad in (
        ("exact gain exceeds min3 bound", exact > min3),
        ("min3 bound exceeds min2 bound", min3 > min2),
        ("cut-set gain differs from min2 bound", cutset != min2),
    ):
        if bad.any():
            index = int(np.argmax(bad))
            raise BoundOrderingError(label, sample.draw(index), snr)


# ---------------------------------------------------------------------------
# Block scheduling
# ---------------------------------------------------------------------------


def _stream_blocks(plan: SimPlan) -> list[list[tuple[int, int]]]:
    """Per stream, the ``(first_sample, count)`` of each block it owns."""
    n_blocks = math.ceil(plan.n_samples / BLOCK_SIZE)
    blocks = [
        (b * BLOCK_SIZE, min(BLOCK_SIZE, plan.n_samples - b * BLOCK_SIZE))
        for b in range(n_blocks)
    ]
    return [
        blocks[s * n_blocks // plan.n_streams : (s + 1) * n_blocks // plan.n_streams]
        for s in range(plan.n_streams)
    ]


def map_blocks(
    means: LinkMeans,
    plan: SimPlan,
    per_block: Callable[[FadingSample], T],
    snr: float | None = None,
) -> list[T]:
    """
    Apply ``per_block`` to every sample block of the plan, in block order.

    Streams run on a thread pool when ``plan.n_streams > 1``. Each stream's
    sub-seed is the first counter of its first block.
    """
    key = derive_key(plan.master_seed)
    assignments = _stream_blocks(plan)

    def run_stream(owned: list[tuple[int, int]]) -> list[T]:
        if not owned:
            return []
        stream = CounterStream(key, owned[0][0] * plan.stride)
        results = []
        for _, count in owned:
            sample = sample_fading_batch(means, stream, count, plan.n_relays)
            if plan.audit and snr is not None and plan.n_relays == 1:
                _audit(sample, snr)
            results.append(per_block(sample))
        return results

    if plan.n_streams == 1:
        per_stream = [run_stream(assignments[0])]
    else:
        with ThreadPoolExecutor(max_workers=plan.n_streams) as pool:
            per_stream = list(pool.map(run_stream, assignments))
    return [result for stream_results in per_stream for result in stream_results]


# ---------------------------------------------------------------------------
# Estimators
# ---------------------------------------------------------------------------


def _check_snr(snr: float) -> float:
    snr = float(snr)
    if not math.isfinite(snr) or snr <= 0:
        raise ValueError(f"snr must be positive and finite, got {snr}")
    return snr


def _binomial(count: int, plan: SimPlan) -> Estimate:
    p = count / plan.n_samples
    return Estimate(
        value=p,
        std_error=math.sqrt(p * (1.0 - p) / plan.n_samples),
        n=plan.n_samples,
        master_seed=plan.master_seed,
    )


def estimate_outage(
    means: LinkMeans,
    snr: float,
    mu_th: float,
    gain_kind: GainKind,
    plan: SimPlan,
) -> Estimate:
    """
    Fraction of draws whose gain falls below ``mu_th``.

    Args:
        means: Link means
        snr: Linear SNR
        mu_th: Gain threshold
        gain_kind: Which gain to test
        plan: Seed, sample count and parallelism

    Returns:
        Estimate with binomial standard error ``sqrt(p (1 - p) / n)``

    Example:
        >>> est = estimate_outage(LinkMeans.unit(), 10.0, 0.3, GainKind.EXACT, SimPlan())
    """
    snr = _check_snr(snr)
    mu_th = float(mu_th)
    if math.isnan(mu_th) or mu_th < 0:
        raise ValueError(f"mu_th must be non-negative, got {mu_th}")

    counts = map_blocks(
        means,
        plan,
        lambda sample: int(np.count_nonzero(gains(sample, gain_kind, snr) < mu_th)),
        snr,
    )
    return _binomial(sum(counts), plan)


def estimate_mean_gain(
    means: LinkMeans, snr: float, gain_kind: GainKind, plan: SimPlan
) -> Estimate:
    """
    Sample mean of the selected gain with its standard error.

    Used with the relay-only kinds to compare the expected relayed gain with
    its two bounds.
    """
    snr = _check_snr(snr)

    def moments(sample: FadingSample) -> tuple[float, float]:
        g = gains(sample, gain_kind, snr)
        return float(np.sum(g)), float(np.sum(g * g))

    partials = map_blocks(means, plan, moments, snr)
    n = plan.n_samples
    mean = math.fsum(s for s, _ in partials) / n
    if n > 1:
        sum_sq = math.fsum(q for _, q in partials)
        variance = max((sum_sq - n * mean * mean) / (n - 1), 0.0)
        std_error = math.sqrt(variance / n)
    else:
        std_error = 0.0
    return Estimate(value=mean, std_error=std_error, n=n, master_seed=plan.master_seed)


def empirical_cdf(
    means: LinkMeans,
    snr: float,
    gain_kind: GainKind,
    grid: Sequence[float],
    plan: SimPlan,
) -> list[Estimate]:
    """
    Outage estimates at every grid point from one shared sample set.

    Raises:
        ValueError: If the grid is empty, negative or not sorted ascending
    """
    snr = _check_snr(snr)
    points = np.asarray(grid, dtype=float)
    if points.ndim != 1 or points.size == 0:
        raise ValueError("grid must be a non-empty 1-d sequence")
    if np.any(np.isnan(points)) or np.any(points < 0):
        raise ValueError("grid values must be non-negative")
    if np.any(np.diff(points) < 0):
        raise ValueError("grid must be sorted ascending")

    def counts(sample: FadingSample) -> np.ndarray:
        g = np.sort(gains(sample, gain_kind, snr))
        return np.searchsorted(g, points, side="left").astype(np.int64)

    totals = np.zeros(points.size, dtype=np.int64)
    for block_counts in map_blocks(means, plan, counts, snr):
        totals += block_counts
    return [_binomial(int(c), plan) for c in totals]


def count_bound_violations(
    means: LinkMeans, snr: float, plan: SimPlan
) -> dict[str, int]:
    """Total pointwise bound-chain violations over all draws of a plan."""
    snr = _check_snr(snr)
    if plan.n_relays != 1:
        raise ValueError("bound ordering is defined for a single relay only")
    totals = {"exact_le_min3": 0, "min3_le_min2": 0, "cutset_eq_min2": 0}
    for block in map_blocks(means, plan, lambda s: check_bound_ordering(s, snr)):
        for name, count in block.items():
            totals[name] += count
    return totals
