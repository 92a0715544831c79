"""Archived Monte Carlo reference values.

A fixture is a CSV file with the header

    kind,mu_sd,mu_sr,mu_rd,snr,mu_th,n,seed,value,std_error

where ``kind`` is ``outage:<gain kind>`` or ``mean:<gain kind>`` and
``mu_th`` is empty for mean rows. Floats are written in shortest round-trip
form. Next to the file sits ``<name>.sha256`` holding the digest of its bytes
in ``sha256sum`` format; a fixture whose digest, header or rows do not check
out is rejected with ``FixtureError``.

Because the generator is counter-based and reductions are exact, every row
can be re-derived from its ``(seed, n, query)`` columns. Outage rows are
integer counts and re-derive bit for bit; mean rows agree to
``FIXTURE_REL_TOL``, which absorbs last-ulp differences of vectorised
``log1p`` and pairwise summation between numpy builds.

``REFERENCE_FIXTURE`` is the archive shipped with the package: the reference
queries at seed 1 and 10^7 samples.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Iterable

from ..channel import LinkMeans
from .sampler import Estimate, GainKind, SimPlan, estimate_mean_gain, estimate_outage

if TYPE_CHECKING:
    from typing import Self

FIXTURE_COLUMNS = (
    "kind",
    "mu_sd",
    "mu_sr",
    "mu_rd",
    "snr",
    "mu_th",
    "n",
    "seed",
    "value",
    "std_error",
)

_ESTIMATORS = ("outage", "mean")

FIXTURE_REL_TOL = 1e-10
"""Relative tolerance of ``verify_fixture``."""

REFERENCE_FIXTURE = Path(__file__).parent / "data" / "reference.csv"
"""Committed archive of ``reference_queries()`` at seed 1, n = 10^7."""


class FixtureError(ValueError):
    """A fixture file failed its integrity checks."""

    def __init__(self, path: Path | str, reason: str) -> None:
        self.path = Path(path)
        self.reason = reason
        super().__init__(f"fixture {self.path}: {reason}")


@dataclass(frozen=True)
class FixtureQuery:
    """
    One reference computation.

    ``estimator`` is ``"outage"`` (needs ``mu_th``) or ``"mean"`` (no threshold).
    """

    estimator: str
    gain_kind: GainKind
    means: LinkMeans
    snr: float
    mu_th: float | None = None

    def __post_init__(self) -> None:
        """Validate the query."""
        if self.estimator not in _ESTIMATORS:
            raise ValueError(
                f"estimator must be one of {_ESTIMATORS}, got {self.estimator!r}"
            )
        if self.estimator == "outage" and self.mu_th is None:
            raise ValueError("outage queries need mu_th")
        if self.estimator == "mean" and self.mu_th is not None:
            raise ValueError("mean queries take no mu_th")

    @property
    def kind(self) -> str:
        """Value of the ``kind`` column."""
        return f"{self.estimator}:{self.gain_kind.value}"

    def run(self, plan: SimPlan) -> Estimate:
        """Compute the estimate under a plan."""
        if self.estimator == "outage":
            assert self.mu_th is not None
            return estimate_outage(
                self.means, self.snr, self.mu_th, self.gain_kind, plan
            )
        return estimate_mean_gain(self.means, self.snr, self.gain_kind, plan)


@dataclass(frozen=True)
class FixtureRow:
    """A query with its archived estimate."""

    query: FixtureQuery
    estimate: Estimate

    def to_record(self) -> dict[str, str]:
        """CSV record with shortest round-trip float text."""
        q = self.query
        return {
            "kind": q.kind,
            "mu_sd": repr(q.means.mu_sd),
            "mu_sr": repr(q.means.mu_sr),
            "mu_rd": repr(q.means.mu_rd),
            "snr": repr(float(q.snr)),
            "mu_th": "" if q.mu_th is None else repr(float(q.mu_th)),
            "n": str(self.estimate.n),
            "seed": str(self.estimate.master_seed),
            "value": repr(self.estimate.value),
            "std_error": repr(self.estimate.std_error),
        }

    @classmethod
    def from_record(cls, record: dict[str, str]) -> Self:
        """
        Parse a CSV record.

        Raises:
            ValueError: If any column is malformed
        """
        estimator, _, kind = record["kind"].partition(":")
        mu_th = record["mu_th"]
        query = FixtureQuery(
            estimator=estimator,
            gain_kind=GainKind(kind),
            means=LinkMeans(
                mu_sd=float(record["mu_sd"]),
                mu_sr=float(record["mu_sr"]),
                mu_rd=float(record["mu_rd"]),
            ),
            snr=float(record["snr"]),
            mu_th=float(mu_th) if mu_th else None,
        )
        estimate = Estimate(
            value=float(record["value"]),
            std_error=float(record["std_error"]),
            n=int(record["n"]),
            master_seed=int(record["seed"]),
        )
        if not (math.isfinite(estimate.value) and math.isfinite(estimate.std_error)):
            raise ValueError("value and std_error must be finite")
        return cls(query=query, estimate=estimate)

    @property
    def plan(self) -> SimPlan:
        """The plan that produced this row, single stream."""
        return SimPlan(master_seed=self.estimate.master_seed, n_samples=self.estimate.n)


@dataclass(frozen=True)
class FixtureMismatch:
    """A row whose re-derived estimate differs from the archived one."""

    row: FixtureRow
    recomputed: Estimate

    def __str__(self) -> str:
        return (
            f"{self.row.query.kind} at {self.row.query.means}, snr={self.row.query.snr!r}: "
            f"archived {self.row.estimate.value!r}, recomputed {self.recomputed.value!r}"
        )


def reference_queries() -> list[FixtureQuery]:
    """
    The reference points archived by ``afrelay fixtures``.

    Outage at unit means, SNR 10 and threshold 0.3 for every gain with the
    direct path; relay-only expected gains at -20 dB with unit means; and the
    exact relayed mean for an unbalanced relay (``mu_rd = 0.1``) at SNR 1.
    """
    unit = LinkMeans.unit()
    queries = [
        FixtureQuery("outage", kind, unit, 10.0, 0.3)
        for kind in (GainKind.EXACT, GainKind.MIN2, GainKind.MIN3, GainKind.CUTSET)
    ]
    queries.extend(
        FixtureQuery("mean", kind, unit, 0.01)
        for kind in (GainKind.EXACT_RELAY, GainKind.MIN2_RELAY, GainKind.MIN3_RELAY)
    )
    queries.append(
        FixtureQuery(
            "mean", GainKind.EXACT_RELAY, LinkMeans(mu_sd=1.0, mu_sr=1.0, mu_rd=0.1), 1.0
        )
    )
    return queries


def compute_fixture_rows(
    queries: Iterable[FixtureQuery],
    n_samples: int = 10_000_000,
    master_seed: int = 1,
    n_streams: int = 1,
) -> list[FixtureRow]:
    """Run every query under one plan."""
    plan = SimPlan(master_seed=master_seed, n_samples=n_samples, n_streams=n_streams)
    return [FixtureRow(query=q, estimate=q.run(plan)) for q in queries]


def sidecar_path(path: Path | str) -> Path:
    """Path of the sha256 sidecar of a fixture file."""
    path = Path(path)
    return path.with_name(path.name + ".sha256")


def _render(rows: Iterable[FixtureRow]) -> bytes:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=FIXTURE_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.to_record())
    return buffer.getvalue().encode("utf-8")


def write_fixture(path: Path | str, rows: Iterable[FixtureRow]) -> Path:
    """
    Write a fixture file and its sha256 sidecar.

    Returns:
        Path of the fixture file

    Raises:
        OSError: If either file cannot be written
    """
    path = Path(path)
    data = _render(rows)
    path.write_bytes(data)
    digest = hashlib.sha256(data).hexdigest()
    sidecar_path(path).write_text(f"{digest}  {path.name}\n", encoding="utf-8")
    return path


def load_fixture(path: Path | str) -> list[FixtureRow]:
    """
    Read a fixture file after checking its digest, header and rows.

    Raises:
        FixtureError: If the sidecar is missing or disagrees with the file,
            the header is wrong, or a row cannot be parsed
        OSError: If the fixture itself cannot be read
    """
    path = Path(path)
    data = path.read_bytes()
    sidecar = sidecar_path(path)
    try:
        recorded = sidecar.read_text(encoding="utf-8").split()
    except OSError as exc:
        raise FixtureError(path, f"cannot read digest file {sidecar.name}: {exc}") from exc
    if not recorded:
        raise FixtureError(path, f"empty digest file {sidecar.name}")
    actual = hashlib.sha256(data).hexdigest()
    if recorded[0].lower() != actual:
        raise FixtureError(path, f"sha256 mismatch: recorded {recorded[0]}, actual {actual}")

    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise FixtureError(path, "not valid UTF-8") from exc
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != FIXTURE_COLUMNS:
        raise FixtureError(path, f"unexpected header {reader.fieldnames}")

    rows = []
    for line_no, record in enumerate(reader, start=2):
        try:
            rows.append(FixtureRow.from_record(record))
        except (KeyError, TypeError, ValueError) as exc:
            raise FixtureError(path, f"line {line_no}: {exc}") from exc
    if not rows:
        raise FixtureError(path, "no data rows")
    return rows


def verify_fixture(
    path: Path | str, n_streams: int = 1, rel_tol: float = FIXTURE_REL_TOL
) -> list[FixtureMismatch]:
    """
    Re-derive every row of a fixture and compare.

    Args:
        path: Fixture file
        n_streams: Workers used for the re-derivation
        rel_tol: Relative tolerance on value and standard error; 0 compares
            exactly

    Returns:
        Rows whose value or standard error differ; empty when all match

    Raises:
        FixtureError: If the file fails its integrity checks
    """
    if not rel_tol >= 0:
        raise ValueError(f"rel_tol must be non-negative, got {rel_tol}")
    mismatches = []
    for row in load_fixture(path):
        plan = SimPlan(
            master_seed=row.estimate.master_seed,
            n_samples=row.estimate.n,
            n_streams=min(n_streams, row.estimate.n),
        )
        recomputed = row.query.run(plan)
        if not (
            math.isclose(recomputed.value, row.estimate.value, rel_tol=rel_tol)
            and math.isclose(recomputed.std_error, row.estimate.std_error, rel_tol=rel_tol)
        ):
            mismatches.append(FixtureMismatch(row=row, recomputed=recomputed))
    return mismatches
