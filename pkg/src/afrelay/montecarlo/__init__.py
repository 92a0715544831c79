"""Seeded, reproducible Monte Carlo oracle for the AF relay channel."""

from .fixtures import (
    FIXTURE_COLUMNS,
    FIXTURE_REL_TOL,
    REFERENCE_FIXTURE,
    FixtureError,
    FixtureMismatch,
    FixtureQuery,
    FixtureRow,
    compute_fixture_rows,
    load_fixture,
    reference_queries,
    sidecar_path,
    verify_fixture,
    write_fixture,
)
from .rng import CounterStream, derive_key, mix64, output_at
from .sampler import (
    BLOCK_SIZE,
    BoundOrderingError,
    Estimate,
    FadingSample,
    GainKind,
    SimPlan,
    check_bound_ordering,
    count_bound_violations,
    empirical_cdf,
    estimate_mean_gain,
    estimate_outage,
    gains,
    map_blocks,
    sample_fading,
    sample_fading_batch,
)

__all__ = [
    # Plans and results
    "SimPlan",
    "Estimate",
    "GainKind",
    "FadingSample",
    "BLOCK_SIZE",
    "BoundOrderingError",
    # Random streams
    "CounterStream",
    "derive_key",
    "mix64",
    "output_at",
    # Sampling
    "sample_fading",
    "sample_fading_batch",
    "gains",
    "map_blocks",
    "check_bound_ordering",
    "count_bound_violations",
    # Estimators
    "estimate_outage",
    "estimate_mean_gain",
    "empirical_cdf",
    # Fixtures
    "FIXTURE_COLUMNS",
    "FIXTURE_REL_TOL",
    "REFERENCE_FIXTURE",
    "FixtureError",
    "FixtureQuery",
    "FixtureRow",
    "FixtureMismatch",
    "reference_queries",
    "compute_fixture_rows",
    "write_fixture",
    "load_fixture",
    "verify_fixture",
    "sidecar_path",
]
