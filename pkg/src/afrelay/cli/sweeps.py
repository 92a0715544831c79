"""SNR sweeps behind the expected-gain and outage curves, written as CSV."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .._dataframe import _table_to_df
from ..analytics import (
    DEFAULT_QUADRATURE,
    OutageQuery,
    QuadratureSpec,
    expected_relay_gain_min2,
    outage_cutset,
    outage_min2,
    outage_min3,
)
from ..channel import LinkMeans, SystemParams, db_to_linear, gain_threshold
from ..montecarlo import GainKind, SimPlan, estimate_mean_gain, estimate_outage
from ..montecarlo.rng import MASK64

MAX_GRID_POINTS = 100_000

FIG2_COLUMNS = (
    "snr_db",
    "snr_linear",
    "mc_exact_relay_gain",
    "mc_exact_se",
    "analytic_min2_gain",
    "mc_min3_gain",
    "mc_min3_se",
    "n",
    "seed",
)

FIG3_COLUMNS = (
    "snr_db",
    "snr_linear",
    "mu_th",
    "mc_exact_outage",
    "mc_exact_se",
    "analytic_min2_outage",
    "analytic_min3_outage",
    "analytic_cutset_outage",
    "n",
    "seed",
)


@dataclass(frozen=True)
class SweepSpec:
    """
    SNR grid, link statistics and Monte Carlo plan of a sweep.

    The grid is ``snr_db_start + k * snr_db_step`` for every k that keeps the
    value at or below ``snr_db_stop``.

    Example:
        >>> spec = SweepSpec(snr_db_start=0.0, snr_db_stop=10.0, snr_db_step=5.0)
        >>> spec.snr_db_grid()
        [0.0, 5.0, 10.0]
    """

    snr_db_start: float = -20.0
    snr_db_stop: float = 30.0
    snr_db_step: float = 1.0
    means: LinkMeans = field(default_factory=LinkMeans.unit)
    rate_threshold: float = 1.0
    n_samples: int = 1_000_000
    master_seed: int = 1
    output_path: Path | None = None
    n_streams: int = 1
    quad: QuadratureSpec = DEFAULT_QUADRATURE

    def __post_init__(self) -> None:
        """Validate the sweep."""
        for name in ("snr_db_start", "snr_db_stop", "snr_db_step", "rate_threshold"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise TypeError(f"{name} must be int or float, got {type(value)}")
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, float(value))
        if self.snr_db_start > self.snr_db_stop:
            raise ValueError(
                f"snr_db_start must not exceed snr_db_stop, got "
                f"{self.snr_db_start} > {self.snr_db_stop}"
            )
        if self.snr_db_step <= 0:
            raise ValueError(f"snr_db_step must be positive, got {self.snr_db_step}")
        if self.rate_threshold < 0:
            raise ValueError(
                f"rate_threshold must be non-negative, got {self.rate_threshold}"
            )
        if self.n_points > MAX_GRID_POINTS:
            raise ValueError(
                f"grid has {self.n_points} points, more than {MAX_GRID_POINTS}"
            )
        if not 0 <= self.master_seed <= MASK64:
            raise ValueError(
                f"master_seed must be a 64-bit unsigned int, got {self.master_seed}"
            )
        if self.output_path is not None:
            object.__setattr__(self, "output_path", Path(self.output_path))
        # Surfaces n_samples / n_streams errors at construction time.
        self.plan()

    @property
    def n_points(self) -> int:
        """Number of grid points."""
        span = (self.snr_db_stop - self.snr_db_start) / self.snr_db_step
        return int(math.floor(span + 1e-9)) + 1

    def snr_db_grid(self) -> list[float]:
        """SNR grid in dB."""
        return [self.snr_db_start + k * self.snr_db_step for k in range(self.n_points)]

    def plan(self) -> SimPlan:
        """Monte Carlo plan shared by every grid point."""
        return SimPlan(
            master_seed=self.master_seed,
            n_samples=self.n_samples,
            n_streams=self.n_streams,
        )


@dataclass(frozen=True)
class SweepResult:
    """Header and rows of a sweep, one row per grid point."""

    columns: tuple[str, ...]
    rows: tuple[tuple[Any, ...], ...]

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> list[Any]:
        """All values of one column."""
        index = self.columns.index(name)
        return [row[index] for row in self.rows]

    def to_csv(self) -> str:
        """
        CSV text with a header row.

        Floats use shortest round-trip formatting, so the text is identical
        for identical inputs.
        """
        buffer = io.StringIO()
        buffer.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buffer.write(",".join(_format_cell(v) for v in row) + "\n")
        return buffer.getvalue()

    def write_csv(self, path: Path | str) -> Path:
        """
        Write the CSV text to a file.

        Raises:
            OSError: If the file cannot be written
        """
        path = Path(path)
        path.write_text(self.to_csv(), encoding="utf-8", newline="")
        return path

    def to_dataframe(self, backend: str = "pandas") -> Any:
        """
        Return the sweep as a DataFrame.

        Args:
            backend: ``"pandas"`` or ``"polars"``

        Raises:
            ImportError: If the requested backend is not installed
            ValueError: If backend is not recognized
        """
        return _table_to_df(self.columns, self.rows, backend=backend)


def _format_cell(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass(frozen=True)
class PointResult:
    """Threshold and analytic outage values at one point."""

    snr: float
    mu_th: float
    outage_min2: float
    outage_min3: float
    outage_cutset: float


def evaluate_point(
    means: LinkMeans,
    snr: float,
    rate_threshold: float,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> PointResult:
    """
    Threshold and analytic outages for one ``(means, SNR, R_th)`` point.

    Shared by ``afrelay eval`` and the outage sweep so both report the same
    numbers for the same point.

    Raises:
        QuadratureError: If the min3 convolution does not converge
    """
    sp = SystemParams(snr=snr, n_relays=1, rate_threshold=rate_threshold)
    q = OutageQuery.from_system(means, sp)
    return PointResult(
        snr=sp.snr,
        mu_th=q.mu_th,
        outage_min2=outage_min2(q),
        outage_min3=outage_min3(q, quad),
        outage_cutset=outage_cutset(q),
    )


def fig2_rows(spec: SweepSpec) -> SweepResult:
    """
    Expected relayed gain against SNR.

    Monte Carlo means of the exact relayed term and of ``min(u, v, uv SNR)``,
    next to the analytic mean ``M_r`` of ``min(u, v)``, which does not depend
    on SNR. Each grid point reuses the same draws.
    """
    plan = spec.plan()
    min2_gain = expected_relay_gain_min2(spec.means)
    rows = []
    for snr_db in spec.snr_db_grid():
        snr = db_to_linear(snr_db)
        exact = estimate_mean_gain(spec.means, snr, GainKind.EXACT_RELAY, plan)
        min3 = estimate_mean_gain(spec.means, snr, GainKind.MIN3_RELAY, plan)
        rows.append(
            (
                snr_db,
                snr,
                exact.value,
                exact.std_error,
                min2_gain,
                min3.value,
                min3.std_error,
                plan.n_samples,
                plan.master_seed,
            )
        )
    return SweepResult(columns=FIG2_COLUMNS, rows=tuple(rows))


def fig3_rows(spec: SweepSpec) -> SweepResult:
    """
    Outage probability against SNR at a fixed rate.

    The threshold, the Monte Carlo outage of the exact gain and the three
    analytic outages per grid point. The analytic columns do not depend on
    the seed.

    Raises:
        QuadratureError: If a min3 convolution does not converge
    """
    plan = spec.plan()
    rows = []
    for snr_db in spec.snr_db_grid():
        point = evaluate_point(
            spec.means, db_to_linear(snr_db), spec.rate_threshold, spec.quad
        )
        exact = estimate_outage(
            spec.means, point.snr, point.mu_th, GainKind.EXACT, plan
        )
        rows.append(
            (
                snr_db,
                point.snr,
                point.mu_th,
                exact.value,
                exact.std_error,
                point.outage_min2,
                point.outage_min3,
                point.outage_cutset,
                plan.n_samples,
                plan.master_seed,
            )
        )
    return SweepResult(columns=FIG3_COLUMNS, rows=tuple(rows))
