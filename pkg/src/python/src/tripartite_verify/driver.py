"""Escalation ladder, range runs and certificate files.

For each n the ladder starts from P = 4(d(n) - 1) and Delta = -1. Each step
finds the largest Delta whose gate (n, Delta, P) certifies empty, then lowers P
to floor((d_tilde(n) - (Delta+1)^2) / 2). The run succeeds once Delta reaches
Delta_max(n) and fails when no Delta certifies or P stops decreasing.

Path: src/python/src/tripartite_verify/driver.py
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import StrEnum
import json
import logging
from pathlib import Path
import time
from typing import Any

import pandas as pd

from .core.config import VerifyConfig, default_config
from .core.error import CertificateWriteError, DelegatedSmallCaseError, UnsupportedRangeError
from .emptiness import GateCertificate, GateParams, certify_gate_empty
from .numbers import NumberTables, shared_tables
from .smallcases import SMALL_CASES, verify_small_case
from .types import CertificateRecord, Method, StepRecord, VolatileRecord

logger = logging.getLogger(__name__)

MIN_N = 3
ETA_NOTE = "eta = floor(P/2) / min admissible s*t"


class Outcome(StrEnum):
    """How one n was settled."""

    SUCCESS = "success"
    FAILURE = "failure"
    TRIVIAL_D_ZERO = "trivial-d-zero"
    TRIVIAL_DTILDE_NEGATIVE = "trivial-dtilde-negative"


_TRIVIAL_METHODS: dict[Outcome, Method] = {
    Outcome.TRIVIAL_D_ZERO: "trivial-d-zero",
    Outcome.TRIVIAL_DTILDE_NEGATIVE: "trivial-dtilde-negative",
}


class StepResult(StrEnum):
    """Result of one ladder step."""

    VERIFIED = "verified"
    NO_DELTA = "no-delta-found"
    P_NOT_DECREASING = "p-not-decreasing"


@dataclass(frozen=True)
class EscalationStep:
    """One ladder step with the statistics of the gate that settled it."""

    t: int
    delta: int | None
    p: int
    result: StepResult
    configs: int = 0
    pruned: dict[str, int] = field(default_factory=dict)
    max_tau_slack: int | None = None

    @classmethod
    def from_gate(cls, t: int, result: StepResult, cert: GateCertificate) -> "EscalationStep":
        """Copy the counters of a gate certificate."""
        delta = cert.gate.delta if result is StepResult.VERIFIED else None
        return cls(
            t=t,
            delta=delta,
            p=cert.gate.p,
            result=result,
            configs=cert.stats.configs,
            pruned=dict(sorted(cert.stats.pruned.items())),
            max_tau_slack=cert.stats.max_tau_slack,
        )

    def record(self) -> StepRecord:
        """Return the certificate form."""
        return {
            "t": self.t,
            "delta": self.delta,
            "p": self.p,
            "configs": self.configs,
            "pruned": dict(self.pruned),
            "max_tau_slack": self.max_tau_slack,
            "result": str(self.result),
        }


@dataclass
class EscalationTrace:
    """All ladder steps for one n."""

    n: int
    outcome: Outcome
    steps: list[EscalationStep] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Return True unless the ladder failed."""
        return self.outcome is not Outcome.FAILURE


def _certify(
    n: int, delta: int, p: int, tables: NumberTables, cfg: VerifyConfig
) -> GateCertificate:
    return certify_gate_empty(GateParams(n, delta, p), tables, cfg)


def run_escalation(
    n: int, tables: NumberTables | None = None, config: VerifyConfig | None = None
) -> EscalationTrace:
    """Run the Delta/P ladder for one n.

    Raises:
        DelegatedSmallCaseError: For n in {13, 14, 16, 17}.
        UnsupportedRangeError: For n outside [3, analytic_limit).
    """
    cfg = config or default_config()
    if not MIN_N <= n < cfg.analytic_limit:
        raise UnsupportedRangeError(
            f"escalation covers {MIN_N} <= n < {cfg.analytic_limit}, got {n}"
        )
    if n in SMALL_CASES:
        raise DelegatedSmallCaseError(n)
    tables = tables if tables is not None and tables.max_n >= n else shared_tables()

    if tables.d[n] == 0:
        return EscalationTrace(n, Outcome.TRIVIAL_D_ZERO, notes=["d(n) = 0, so P = -4 < 0"])
    delta_max = tables.delta_max(n)
    if delta_max is None:
        return EscalationTrace(
            n, Outcome.TRIVIAL_DTILDE_NEGATIVE, notes=[f"d_tilde(n) = {tables.d_tilde[n]} < 0"]
        )

    trace = EscalationTrace(n, Outcome.FAILURE, notes=[ETA_NOTE])
    previous_delta = -1
    p = 4 * (tables.d[n] - 1)
    t = 1
    while True:
        found: GateCertificate | None = None
        last: GateCertificate | None = None
        for delta in range(delta_max, previous_delta, -1):
            cert = _certify(n, delta, p, tables, cfg)
            last = cert
            if cert.ok:
                found = cert
                break
            logger.debug("n=%d t=%d: delta=%d failed at %s", n, t, delta, cert.failed_stage)

        if found is None:
            assert last is not None
            trace.steps.append(EscalationStep.from_gate(t, StepResult.NO_DELTA, last))
            trace.notes.append(f"step {t}: no delta certifies; last stage {last.failed_stage}")
            break
        trace.steps.append(EscalationStep.from_gate(t, StepResult.VERIFIED, found))
        logger.info("n=%d step %d: delta=%d at P=%d", n, t, found.gate.delta, p)
        if found.gate.delta == delta_max:
            trace.outcome = Outcome.SUCCESS
            break

        previous_delta = found.gate.delta
        next_p = (tables.d_tilde[n] - (previous_delta + 1) ** 2) // 2
        t += 1
        if next_p >= p:
            trace.steps.append(EscalationStep(t, None, next_p, StepResult.P_NOT_DECREASING))
            break
        p = next_p
    return trace


# ---------------------------------------------------------------------------
# Range runs
# ---------------------------------------------------------------------------


@dataclass
class NumberResult:
    """Certificate record and timing for one n."""

    record: CertificateRecord
    ms: float

    @property
    def n(self) -> int:
        """Return n."""
        return self.record["n"]

    @property
    def ok(self) -> bool:
        """Return the record's ok flag."""
        return self.record["ok"]


def certificate_for(n: int, config: VerifyConfig | None = None) -> CertificateRecord:
    """Settle one n by escalation or small-case analysis and return its certificate."""
    cfg = config or default_config()
    if n in SMALL_CASES:
        report = verify_small_case(n)
        data = report.record()
        notes = [
            "feasible sequences: " + " ".join(data["feasible_sequences"]),
            "bounds: " + ", ".join(f"{k}={v}" for k, v in data["bounds"].items()),
            f"verdict: {data['verdict']}",
        ]
        return {
            "n": n,
            "method": "small-case",
            "ok": report.ok,
            "steps": [],
            "notes": notes,
            "branches": data["branches"],
        }

    trace = run_escalation(n, config=cfg)
    method: Method = _TRIVIAL_METHODS.get(trace.outcome, "escalation")
    return {
        "n": n,
        "method": method,
        "ok": trace.ok,
        "steps": [step.record() for step in trace.steps],
        "notes": list(trace.notes),
    }


def _timed_certificate(args: tuple[int, VerifyConfig]) -> NumberResult:
    n, cfg = args
    started = time.perf_counter()
    record = certificate_for(n, cfg)
    return NumberResult(record, round((time.perf_counter() - started) * 1000, 3))


@dataclass
class RangeSummary:
    """Ordered results of a range run."""

    start: int
    stop: int
    results: list[NumberResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Return True when every n was certified."""
        return all(result.ok for result in self.results)

    @property
    def failures(self) -> list[int]:
        """Return the n whose certification failed."""
        return [result.n for result in self.results if not result.ok]

    def counts(self) -> dict[str, int]:
        """Return the number of n settled by each method."""
        out: dict[str, int] = {}
        for result in self.results:
            out[result.record["method"]] = out.get(result.record["method"], 0) + 1
        return dict(sorted(out.items()))

    def to_frame(self) -> pd.DataFrame:
        """Return one row per n: method, ok, step count and elapsed milliseconds."""
        return pd.DataFrame(
            [
                {
                    "n": result.n,
                    "method": result.record["method"],
                    "ok": result.ok,
                    "steps": len(result.record["steps"]),
                    "ms": result.ms,
                }
                for result in self.results
            ],
            columns=["n", "method", "ok", "steps", "ms"],
        )


def run_range(
    start: int,
    stop: int,
    jobs: int = 1,
    fail_fast: bool = False,
    config: VerifyConfig | None = None,
) -> RangeSummary:
    """Certify every n in [start, stop], one work unit per n, results ordered by n.

    Raises:
        UnsupportedRangeError: If the bounds leave [3, analytic_limit).
    """
    cfg = config or default_config()
    if not MIN_N <= start <= stop < cfg.analytic_limit:
        raise UnsupportedRangeError(
            f"need {MIN_N} <= from <= to < {cfg.analytic_limit}, got [{start}, {stop}]; "
            f"n >= {cfg.analytic_limit} is covered by the analytic argument"
        )
    summary = RangeSummary(start, stop)
    work = [(n, cfg) for n in range(start, stop + 1)]

    if jobs <= 1:
        for item in work:
            result = _timed_certificate(item)
            summary.results.append(result)
            if fail_fast and not result.ok:
                break
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_timed_certificate, item) for item in work]
            for future in futures:
                result = future.result()
                summary.results.append(result)
                if fail_fast and not result.ok:
                    for pending in futures:
                        pending.cancel()
                    break

    logger.info("range [%d, %d]: %s, failures=%s", start, stop, summary.counts(), summary.failures)
    return summary


# ---------------------------------------------------------------------------
# Certificate files
# ---------------------------------------------------------------------------


def volatile_path(path: Path) -> Path:
    """Return the timing sibling of a certificate file: <stem>.volatile<suffix>."""
    return path.with_name(f"{path.stem}.volatile{path.suffix}")


def _write_jsonl(path: Path, rows: list[dict[str, Any]]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, sort_keys=True) + "\n")


def emit_certificates(results: list[NumberResult], path: Path) -> Path:
    """Write stable records to ``path`` and timings to its volatile sibling.

    Raises:
        CertificateWriteError: If either file cannot be written.
    """
    ordered = sorted(results, key=lambda result: result.n)
    stable = [dict(result.record) for result in ordered]
    timings: list[VolatileRecord] = [{"n": result.n, "ms": result.ms} for result in ordered]
    for target, rows in ((path, stable), (volatile_path(path), timings)):
        try:
            _write_jsonl(target, rows)  # type: ignore[arg-type]
        except OSError as exc:
            raise CertificateWriteError(target, str(exc)) from exc
    logger.info("wrote %d certificate records to %s", len(stable), path)
    return path
