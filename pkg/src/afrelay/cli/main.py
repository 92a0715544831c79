"""The ``afrelay`` command.

Subcommands:

    eval       analytic outages (and optionally a Monte Carlo estimate) at one point
    fig2       expected relayed gain against SNR, as CSV
    fig3       outage probability against SNR, as CSV
    validate   analytic versus Monte Carlo audit, including the packaged fixture
    fixtures   archive Monte Carlo reference values

SNR is given in dB and converted to a linear ratio once, here.

Exit codes: 0 ok, 1 validation failure, 2 usage, 3 quadrature
non-convergence, 4 I/O error, 5 fixture integrity.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .. import __version__
from ..analytics import QuadratureError, QuadratureSpec
from ..channel import LinkMeans, SystemParams, db_to_linear, gain_threshold
from ..montecarlo import (
    REFERENCE_FIXTURE,
    FixtureError,
    GainKind,
    SimPlan,
    compute_fixture_rows,
    estimate_outage,
    reference_queries,
    write_fixture,
)
from .audit import AuditConfig, run_audit
from .sweeps import SweepResult, SweepSpec, evaluate_point, fig2_rows, fig3_rows

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_QUADRATURE = 3
EXIT_IO = 4
EXIT_FIXTURE = 5


class UsageError(ValueError):
    """Flags parsed but do not describe a valid request."""


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"must be positive and finite, got {text}")
    return value


def _non_negative_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value >= 0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"must be non-negative and finite, got {text}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"must be a 64-bit unsigned int, got {text}")
    return value


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_link_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("link statistics")
    g.add_argument("--mu-sd", type=_positive_float, default=1.0, help="mean |h_sd|^2 (default 1)")
    g.add_argument("--mu-sr", type=_positive_float, default=1.0, help="mean |h_sr|^2 (default 1)")
    g.add_argument("--mu-rd", type=_positive_float, default=1.0, help="mean |h_rd|^2 (default 1)")
    g.add_argument(
        "--rate", type=_non_negative_float, default=1.0, help="rate threshold R_th in bits/use (default 1)"
    )


def _add_mc_flags(p: argparse.ArgumentParser, default_n: int) -> None:
    g = p.add_argument_group("monte carlo")
    g.add_argument(
        "--n-samples", type=_positive_int, default=default_n, help=f"draws per estimate (default {default_n})"
    )
    g.add_argument("--seed", type=_seed, default=1, help="64-bit master seed (default 1)")
    g.add_argument(
        "--streams", type=_positive_int, default=1, help="parallel streams; results do not depend on it"
    )


def _add_quad_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("quadrature")
    g.add_argument("--quad-abs-tol", type=_non_negative_float, default=1e-10)
    g.add_argument("--quad-rel-tol", type=_non_negative_float, default=1e-9)


def _add_sweep_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("snr sweep")
    g.add_argument("--snr-db-start", type=float, default=-20.0)
    g.add_argument("--snr-db-stop", type=float, default=30.0)
    g.add_argument("--snr-db-step", type=_positive_float, default=1.0)
    p.add_argument("--out", type=Path, help="output CSV (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="afrelay",
        description="Outage analysis of amplify-and-forward relay networks under Rayleigh fading.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one (means, SNR, rate) point")
    _add_link_flags(p)
    p.add_argument("--snr-db", type=float, required=True, help="SNR in dB")
    p.add_argument("--relays", type=_positive_int, default=1, help="relays M (M > 1 needs --mc)")
    p.add_argument("--mc", action="store_true", help="add a Monte Carlo estimate of the exact outage")
    p.add_argument("--json", action="store_true", help="print a JSON record instead of text")
    p.add_argument("--out", type=Path, help="also write the JSON record to a file")
    _add_mc_flags(p, 1_000_000)
    _add_quad_flags(p)
    p.set_defaults(handler=cmd_eval)

    for name, handler, text in (
        ("fig2", cmd_fig2, "expected relayed gain against SNR"),
        ("fig3", cmd_fig3, "outage probability against SNR"),
    ):
        p = sub.add_parser(name, help=text)
        _add_link_flags(p)
        _add_sweep_flags(p)
        _add_mc_flags(p, 1_000_000)
        _add_quad_flags(p)
        p.set_defaults(handler=handler)

    p = sub.add_parser("validate", help="analytic versus Monte Carlo audit")
    _add_mc_flags(p, 1_000_000)
    _add_quad_flags(p)
    fixture = p.add_mutually_exclusive_group()
    fixture.add_argument(
        "--fixture",
        type=Path,
        default=REFERENCE_FIXTURE,
        help="fixture file to verify and re-derive (default: the packaged reference archive)",
    )
    fixture.add_argument(
        "--no-fixture", dest="fixture", action="store_const", const=None, default=REFERENCE_FIXTURE,
        help="skip fixture verification",
    )
    p.add_argument("--grid-points", type=_positive_int, default=50)
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--out", type=Path, help="write the JSON report to a file")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("fixtures", help="archive Monte Carlo reference values")
    _add_mc_flags(p, 10_000_000)
    p.add_argument("--out", type=Path, required=True, help="fixture CSV; a .sha256 file is written next to it")
    p.set_defaults(handler=cmd_fixtures)

    return parser


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _quad(args: argparse.Namespace) -> QuadratureSpec:
    try:
        return QuadratureSpec(abs_tol=args.quad_abs_tol, rel_tol=args.quad_rel_tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _means(args: argparse.Namespace) -> LinkMeans:
    return LinkMeans(mu_sd=args.mu_sd, mu_sr=args.mu_sr, mu_rd=args.mu_rd)


def _dump(record: dict[str, Any]) -> str:
    return json.dumps(record, sort_keys=True)


def cmd_eval(args: argparse.Namespace) -> int:
    """Analytic outages at one point, plus the exact-gain estimate with ``--mc``."""
    if args.relays > 1 and not args.mc:
        raise UsageError("--relays > 1 is only supported with --mc")
    means = _means(args)
    snr = db_to_linear(args.snr_db)
    record: dict[str, Any] = {
        "mu_sd": means.mu_sd,
        "mu_sr": means.mu_sr,
        "mu_rd": means.mu_rd,
        "snr_db": args.snr_db,
        "snr_linear": snr,
        "rate": args.rate,
        "relays": args.relays,
    }
    if args.relays == 1:
        point = evaluate_point(means, snr, args.rate, _quad(args))
        record |= {
            "mu_th": point.mu_th,
            "outage_min2": point.outage_min2,
            "outage_min3": point.outage_min3,
            "outage_cutset": point.outage_cutset,
        }
    else:
        sp = SystemParams(snr=snr, n_relays=args.relays, rate_threshold=args.rate)
        record["mu_th"] = gain_threshold(sp)
    if args.mc:
        plan = SimPlan(
            master_seed=args.seed,
            n_samples=args.n_samples,
            n_streams=min(args.streams, args.n_samples),
            n_relays=args.relays,
        )
        est = estimate_outage(means, snr, record["mu_th"], GainKind.EXACT, plan)
        record |= {
            "mc_exact_outage": est.value,
            "mc_exact_se": est.std_error,
            "n": est.n,
            "seed": est.master_seed,
        }

    text = _dump(record)
    if args.out is not None:
        args.out.write_text(text + "\n", encoding="utf-8")
    if args.json:
        print(text)
    else:
        width = max(len(k) for k in record)
        for key, value in record.items():
            print(f"{key:<{width}}  {value!r}" if isinstance(value, float) else f"{key:<{width}}  {value}")
    return EXIT_OK


def _sweep_spec(args: argparse.Namespace) -> SweepSpec:
    try:
        return SweepSpec(
            snr_db_start=args.snr_db_start,
            snr_db_stop=args.snr_db_stop,
            snr_db_step=args.snr_db_step,
            means=_means(args),
            rate_threshold=args.rate,
            n_samples=args.n_samples,
            master_seed=args.seed,
            output_path=args.out,
            n_streams=min(args.streams, args.n_samples),
            quad=_quad(args),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(result: SweepResult, spec: SweepSpec) -> int:
    if spec.output_path is None:
        sys.stdout.write(result.to_csv())
    else:
        result.write_csv(spec.output_path)
        print(f"wrote {len(result)} rows to {spec.output_path}", file=sys.stderr)
    return EXIT_OK


def cmd_fig2(args: argparse.Namespace) -> int:
    """Expected relayed gain sweep."""
    spec = _sweep_spec(args)
    return _emit(fig2_rows(spec), spec)


def cmd_fig3(args: argparse.Namespace) -> int:
    """Outage probability sweep."""
    spec = _sweep_spec(args)
    return _emit(fig3_rows(spec), spec)


def cmd_validate(args: argparse.Namespace) -> int:
    """Run the audit; exit 1 if any asserted check fails."""
    try:
        config = AuditConfig(
            n_samples=args.n_samples,
            master_seed=args.seed,
            n_streams=args.streams,
            grid_points=max(args.grid_points, 2),
            quad=_quad(args),
            fixture_path=args.fixture,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = run_audit(config)
    payload = _dump(report.to_dict())
    if args.out is not None:
        args.out.write_text(payload + "\n", encoding="utf-8")
    if args.json:
        print(payload)
    else:
        sys.stdout.write(report.to_text())
    if report.passed:
        return EXIT_OK
    for failure in report.failures:
        print(
            f"afrelay: check failed: ({failure.name}; {failure.query}; "
            f"expected={failure.expected!r}; got={failure.got!r}; tolerance={failure.tolerance!r})",
            file=sys.stderr,
        )
    return EXIT_VALIDATION


def cmd_fixtures(args: argparse.Namespace) -> int:
    """Compute and archive the reference queries."""
    rows = compute_fixture_rows(
        reference_queries(),
        n_samples=args.n_samples,
        master_seed=args.seed,
        n_streams=min(args.streams, args.n_samples),
    )
    path = write_fixture(args.out, rows)
    print(f"wrote {len(rows)} fixture rows to {path}", file=sys.stderr)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        return args.handler(args)
    except QuadratureError as exc:
        print(f"afrelay: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    except FixtureError as exc:
        print(f"afrelay: {exc}", file=sys.stderr)
        return EXIT_FIXTURE
    except OSError as exc:
        print(f"afrelay: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        # UsageError and invalid values rejected by the value objects
        parser.print_usage(sys.stderr)
        print(f"afrelay: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
