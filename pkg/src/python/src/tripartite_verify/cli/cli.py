"""Command-line interface for tripartite-verify.

This module provides CLI commands for:
- verify: Certify g_3(n) for every n in a range and write certificate files
- tables: Print g3, t, d, dtilde or deltamax as CSV
- identities: Check the exact identities between the number sequences
- smallcase: Run the degree-sequence analysis for n in {13, 14, 16, 17}
- brute: Exhaustive maximum of monochromatic triangles for tiny n
- props: Randomized lemma checks on colorings and tournaments
- highk: Numeric conditions for uniformity k >= 7
- fcheck: Properties of F and the grid oracle sandwich
- validate-certificates: Validate a JSONL certificate file against its schema
- version: Display the package version

Exit codes: 0 when every check is certified, 1 on a mathematical verification
failure, 2 on a usage or configuration error.

Examples:
uv run tv verify --from 3 --to 699 --jobs 8 --out out/certificates.jsonl
uv run tv tables --fn d --max 50
uv run tv --log-level INFO smallcase --n 16
"""

from collections.abc import Iterator
from contextlib import contextmanager
import json
import logging
from pathlib import Path
from typing import Annotated, Any

import pandas as pd
import typer

from tripartite_verify.core import VerifyConfig, VerifyError, __version__, load_config
from tripartite_verify.driver import emit_certificates, run_range
from tripartite_verify.fmin import run_fcheck
from tripartite_verify.highk import check_big_nk, min_n, monotonicity_scan, probe
from tripartite_verify.numbers import NumberTables, check_sequence_identities, g_k
from tripartite_verify.oracle import brute_force_max, run_property_suite
from tripartite_verify.smallcases import verify_small_case
from tripartite_verify.validation import ValidationSummary, validate_certificate_path

app = typer.Typer(help="Exact verifier for the tripartite monochromatic-triangle bound")

USAGE_ERROR = 2
VERIFY_FAILURE = 1


def _config(ctx: typer.Context) -> VerifyConfig:
    return ctx.obj["config"]


@contextmanager
def _usage_errors() -> Iterator[None]:
    """Turn library precondition errors into exit code 2."""
    try:
        yield
    except VerifyError as exc:
        typer.echo(f"Error: {exc}", err=True)
        raise typer.Exit(code=USAGE_ERROR) from exc


def _finish(ok: bool, message: str) -> None:
    if ok:
        typer.echo(message)
        raise typer.Exit(code=0)
    typer.echo(f"FAILED: {message}")
    raise typer.Exit(code=VERIFY_FAILURE)


def _echo_json(data: Any) -> None:
    typer.echo(json.dumps(data, indent=2, sort_keys=True))


@app.callback()
def main(
    ctx: typer.Context,
    config: Annotated[
        Path | None,
        typer.Option("--config", help="YAML file overriding individual default settings."),
    ] = None,
    log_level: Annotated[
        str,
        typer.Option("--log-level", help="Logging level (DEBUG, INFO, WARNING, ERROR)."),
    ] = "WARNING",
) -> None:
    """Load configuration and set up logging before any command runs."""
    level = logging.getLevelName(log_level.upper())
    if not isinstance(level, int):
        typer.echo(f"Error: unknown log level {log_level!r}", err=True)
        raise typer.Exit(code=USAGE_ERROR)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    with _usage_errors():
        ctx.obj = {"config": load_config(config)}


@app.command("verify")
def verify_cmd(
    ctx: typer.Context,
    start: Annotated[int, typer.Option("--from", help="First n to certify.")] = 3,
    stop: Annotated[int, typer.Option("--to", help="Last n to certify (at most 699).")] = 699,
    jobs: Annotated[int, typer.Option("--jobs", "-j", help="Worker processes.")] = 1,
    out: Annotated[
        Path | None,
        typer.Option("--out", help="JSONL certificate file; timings go to a .volatile sibling."),
    ] = None,
    fail_fast: Annotated[
        bool, typer.Option("--fail-fast", help="Stop at the first n that fails.")
    ] = False,
    summary: Annotated[
        bool, typer.Option("--summary", help="Print one table row per n.")
    ] = False,
) -> None:
    """Certify g_3(n) for every n in [from, to]."""
    cfg = _config(ctx)
    if stop >= cfg.analytic_limit:
        typer.echo(
            f"Error: n >= {cfg.analytic_limit} is not run; those n are covered by the "
            "analytic large-n argument, not by computation.",
            err=True,
        )
        raise typer.Exit(code=USAGE_ERROR)

    with _usage_errors():
        result = run_range(start, stop, jobs=jobs, fail_fast=fail_fast, config=cfg)
        if out is not None:
            emit_certificates(result.results, out)
            typer.echo(f"Wrote {out}")

    if summary:
        typer.echo(result.to_frame().to_string(index=False))
    for method, count in result.counts().items():
        typer.echo(f"{method}: {count}")
    if result.failures:
        typer.echo("failed n: " + " ".join(str(n) for n in result.failures))
    _finish(result.ok, f"certified {len(result.results)} value(s) of n in [{start}, {stop}]")


@app.command("tables")
def tables_cmd(
    fn: Annotated[
        str, typer.Option("--fn", help="One of g3, t, d, dtilde, deltamax.")
    ] = "g3",
    max_n: Annotated[int, typer.Option("--max", help="Largest n to print.")] = 100,
) -> None:
    """Print one number sequence as CSV."""
    with _usage_errors():
        rows = NumberTables.build(max_n).rows(fn)
    frame = pd.DataFrame(rows, columns=["n", fn])
    typer.echo(frame.to_csv(index=False), nl=False)


@app.command("identities")
def identities_cmd(
    ctx: typer.Context,
    recursion_max: Annotated[
        int, typer.Option("--recursion-max", help="Range of the d(n) recursion check.")
    ] = 10**6,
    nice_max: Annotated[
        int, typer.Option("--nice-max", help="Range of the d(n) = 0 characterization.")
    ] = 10**5,
    k_max: Annotated[int, typer.Option("--kmax", help="Largest uniformity checked.")] = 8,
) -> None:
    """Check the exact identities between g_k, T, d and d_tilde."""
    with _usage_errors():
        report = check_sequence_identities(
            recursion_max=recursion_max,
            nice_max=nice_max,
            full_max=_config(ctx).full_max_cutoff,
            k_max=k_max,
        )
    for name, count in report.checked.items():
        failures = report.failures[name]
        status = "ok" if not failures else f"{len(failures)} failure(s), first {failures[0]}"
        typer.echo(f"{name} ({count} checked): {status}")
    _finish(report.ok, "all identities hold")


@app.command("smallcase")
def smallcase_cmd(
    n: Annotated[int, typer.Option("--n", help="One of 13, 14, 16, 17.")],
) -> None:
    """Run the degree-sequence contradiction for one delegated n."""
    with _usage_errors():
        report = verify_small_case(n)
    _echo_json(report.record())
    _finish(report.ok, f"n={n}: {report.verdict}")


@app.command("brute")
def brute_cmd(
    ctx: typer.Context,
    n: Annotated[int, typer.Option("--n", help="Number of vertices.")],
    jobs: Annotated[int, typer.Option("--jobs", help="Worker processes for the search.")] = 1,
) -> None:
    """Compare the exhaustive maximum with g_3(n)."""
    with _usage_errors():
        best = brute_force_max(n, cutoff=_config(ctx).brute_force_cutoff, jobs=jobs)
        expected = g_k(3, n)
    typer.echo(f"n={n}: brute force {best}, g_3(n) {expected}")
    _finish(best == expected, f"n={n}: brute force agrees with g_3(n)")


@app.command("props")
def props_cmd(
    trials: Annotated[int, typer.Option("--trials", help="Random colorings to check.")] = 1000,
    seed: Annotated[int, typer.Option("--seed", help="Random seed.")] = 0,
) -> None:
    """Check the lemmas on random tripartite colorings and tournaments."""
    with _usage_errors():
        report = run_property_suite(trials, seed)
    for name, count in sorted(report.violations.items()):
        example = report.examples.get(name, "")
        typer.echo(f"{name}: {count} violation(s) {example}".rstrip())
    typer.echo(f"checked colorings: {report.checked}, skipped draws: {report.skipped}")
    _finish(report.ok, f"{report.checked} colorings, no violations")


@app.command("highk")
def highk_cmd(
    ctx: typer.Context,
    k_max: Annotated[int, typer.Option("--kmax", help="Largest uniformity to probe.")] = 20,
    e3: Annotated[
        bool, typer.Option("--e3", help="Decide with the e^3 form of the left-hand side.")
    ] = False,
) -> None:
    """Probe the k >= 7 condition at n = k(k-1)+1 and the monotonicity safeguards."""
    cfg = _config(ctx)
    with _usage_errors():
        rows = []
        for k in range(7, k_max + 1):
            n = min_n(k)
            row = probe(k, n).record()
            row["holds"] = check_big_nk(k, n, safety=cfg.highk_safety, use_e3_bound=e3)
            rows.append(row)
        monotone = monotonicity_scan(max(k_max, 8))
    columns = ["k", "n", "alpha", "beta", "gamma", "lhs", "lhs_e3", "rhs", "holds"]
    typer.echo(pd.DataFrame(rows, columns=columns).to_string(index=False))
    typer.echo(
        f"monotonicity: {monotone.checked} checks, first violation {monotone.first_violation}"
    )
    _finish(
        all(row["holds"] for row in rows) and monotone.ok,
        f"condition holds for 7 <= k <= {k_max}",
    )


@app.command("fcheck")
def fcheck_cmd(
    trials: Annotated[int, typer.Option("--trials", help="Random (A, B, C) triples.")] = 200,
    resolution: Annotated[int, typer.Option("--resolution", help="Grid resolution R.")] = 16,
    seed: Annotated[int, typer.Option("--seed", help="Random seed.")] = 0,
) -> None:
    """Check the properties of F against the grid oracle."""
    with _usage_errors():
        report = run_fcheck(trials, resolution, seed)
    for name, count in sorted(report.violations.items()):
        example = report.examples.get(name, "")
        typer.echo(f"{name}: {count} violation(s) {example}".rstrip())
    _finish(report.ok, f"{trials} triples, no violations")


@app.command("validate-certificates")
def validate_certificates(
    path: Annotated[Path, typer.Argument(help="JSONL certificate file.")],
) -> None:
    """Validate a certificate file against the certificate schema."""
    summary: ValidationSummary = validate_certificate_path(path)

    if not summary.results:
        typer.echo("No certificate records found to validate.")
        raise typer.Exit(code=VERIFY_FAILURE)

    for result in summary.results:
        if result.ok:
            continue
        typer.echo(f"[ERROR] line {result.line}")
        for err in result.errors:
            typer.echo(f"  - {err}")

    if not summary.ok:
        typer.echo(f"Validation completed with {summary.error_count} error(s).")
        raise typer.Exit(code=VERIFY_FAILURE)

    typer.echo(f"All {len(summary.results)} records validated successfully.")
    raise typer.Exit(code=0)


@app.command("version")
def version_cmd() -> None:
    """Show package version."""
    typer.echo(__version__)
