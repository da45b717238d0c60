"""Certify that a gate class of minimal counterexamples is empty.

A gate (n, Delta, P) collects the colorings on n vertices that would beat the
blowup bound while having tournament imbalance at most Delta and
2 pc_2 + pc_3 <= P. The pipeline first checks three global hypotheses (the
size assumption on the pivot neighborhood, the second step and the third step),
then enumerates every part configuration (|X*|, |Y*|, |U|) together with every
count b_XY of non-primary edges between X and Y. Each combination must be
pruned by a cited inequality or end with tau <= 2 min(|X*|, |Y*|, |U|).

Everything here is integer or Fraction arithmetic.

Path: src/python/src/tripartite_verify/emptiness.py
"""

from collections.abc import Iterator
from dataclasses import dataclass, field, replace
from enum import StrEnum
from fractions import Fraction
import logging
from math import floor
from typing import Any

from .admissible import AdmissiblePair, enumerate_admissible, tables_for
from .core.config import VerifyConfig, default_config
from .core.error import AuditMismatchError, EmptyAdmissibleSetError, InvalidQueryError
from .fmin import f
from .numbers import NumberTables, bip

logger = logging.getLogger(__name__)

# ---------------------------------------------------------------------------
# Prune reasons
# ---------------------------------------------------------------------------

PRUNE_NO_ADMISSIBLE = "no admissible pair"
PRUNE_M_BAR_NEGATIVE = "m_bar_negative"
PRUNE_PART_DIFFERENCE = "overline_m_a"
PRUNE_EMPTY_CORE = "empty_core"
PRUNE_CORE_DEGREE = "overline_m_c"
PRUNE_OUTSIDE_DEGREE = "overline_m_d"
PRUNE_NO_QUOTA = "no vertex achieves triangle quota"
PRUNE_BXY = "bxy_infeasible"

# Once one of these fires for some b_XY it fires for every larger b_XY.
MONOTONE_PRUNES = frozenset(
    {PRUNE_M_BAR_NEGATIVE, PRUNE_PART_DIFFERENCE, PRUNE_CORE_DEGREE, PRUNE_OUTSIDE_DEGREE}
)


class Verdict(StrEnum):
    """Outcome of certifying one gate."""

    EMPTY_TRIVIAL = "empty-trivial-P-negative"
    EMPTY_VERIFIED = "empty-verified"
    FAILED = "FAILED"


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GateParams:
    """The gate (n, Delta, P)."""

    n: int
    delta: int
    p: int

    def __post_init__(self) -> None:
        """Reject n < 3 and a negative Delta."""
        if self.n < 3:
            raise InvalidQueryError(f"gate needs n >= 3, got {self.n}")
        if self.delta < 0:
            raise InvalidQueryError(f"gate needs delta >= 0, got {self.delta}")

    @property
    def half(self) -> int:
        """Return floor(P/2)."""
        return self.p // 2


@dataclass(frozen=True)
class PartConfig:
    """Sizes of X*, Y*, U and the count b_XY of non-primary X-Y edges."""

    x_star: int
    y_star: int
    u: int
    b_xy: int

    @property
    def n(self) -> int:
        """Return |X*| + |Y*| + |U|."""
        return self.x_star + self.y_star + self.u


@dataclass(frozen=True)
class DerivedBounds:
    """Bounds derived for one (config, b_XY); the later fields are set once known."""

    eta: Fraction
    m_bar: int
    x_bar_max: int
    y_bar_max: int
    x_min: int
    y_min: int
    m_cap: int
    tau: int | None = None
    c_bxy: Fraction | None = None
    c_rest: Fraction | None = None
    max_bu_x: int | None = None
    max_bu_y: int | None = None
    b_uystar: int | None = None

    def record(self) -> dict[str, Any]:
        """Return a JSON-ready mapping; rationals become strings."""
        return {
            key: str(value) if isinstance(value, Fraction) else value
            for key, value in self.__dict__.items()
        }


@dataclass(frozen=True)
class Pruned:
    """A (config, b_XY) combination ruled out by the named inequality."""

    reason: str


@dataclass(frozen=True)
class MaxBadEdges:
    """Upper bounds on b_U over X* and over Y*, with the bootstrap counts when used."""

    x: int
    y: int
    b_uystar: int | None = None
    b_uxstar: int | None = None


@dataclass(frozen=True)
class ThirdStepResult:
    """Outcome of the third-step check."""

    ok: bool
    probes: int
    failure: dict[str, Any] | None = None


@dataclass
class GateStats:
    """Counters accumulated while certifying one gate."""

    pairs: int = 0
    third_step_probes: int = 0
    configs: int = 0
    pruned: dict[str, int] = field(default_factory=dict)
    max_tau_slack: int | None = None

    def prune(self, reason: str, count: int = 1) -> None:
        """Count ``count`` combinations pruned by ``reason``."""
        self.pruned[reason] = self.pruned.get(reason, 0) + count

    def observe_slack(self, slack: int) -> None:
        """Track the largest tau - 2 min(|X*|, |Y*|, |U|) seen."""
        if self.max_tau_slack is None or slack > self.max_tau_slack:
            self.max_tau_slack = slack


@dataclass
class GateCertificate:
    """Verdict and statistics for one gate."""

    gate: GateParams
    verdict: Verdict
    stats: GateStats = field(default_factory=GateStats)
    eta: Fraction | None = None
    failed_stage: str | None = None
    counterexample: dict[str, Any] | None = None

    @property
    def ok(self) -> bool:
        """Return True unless the verdict is FAILED."""
        return self.verdict is not Verdict.FAILED


# ---------------------------------------------------------------------------
# Global hypotheses
# ---------------------------------------------------------------------------


def check_xy_assumption(n: int, tables: NumberTables | None = None) -> bool:
    """Check ceil(12 g_3(n) / (n(n-1))) >= ceil(n/2)."""
    tables = tables_for(n, tables)
    denominator = n * (n - 1)
    return -(-12 * tables.g[n] // denominator) >= (n + 1) // 2


def _pairs(
    gate: GateParams, pairs: list[AdmissiblePair] | None, tables: NumberTables
) -> list[AdmissiblePair]:
    return enumerate_admissible(gate.n, gate.delta, tables) if pairs is None else pairs


def _cap(s: int, t: int, delta: int) -> int:
    return (s + t + delta) // 2


def certify_second_step(
    gate: GateParams,
    pairs: list[AdmissiblePair] | None = None,
    tables: NumberTables | None = None,
) -> list[AdmissiblePair]:
    """Return the admissible pairs where F(s, t - floor(P/2s), cap) > P fails.

    An empty list means the step passes.
    """
    tables = tables_for(gate.n, tables)
    failing = []
    for pair in _pairs(gate, pairs, tables):
        s, t = pair.s, pair.t
        if f(s, t - gate.p // (2 * s), _cap(s, t, gate.delta)) <= gate.p:
            failing.append(pair)
    return failing


def _w_holds(s: int, t: int, k: int, w: int, slack: int) -> bool:
    # s(t - k/s - w)_+^2 + t(s - k/t - w)_+^2 + (s-t)^2 <= slack - 4k, scaled by s*t.
    st = s * t
    first = max(st - k - w * s, 0)
    second = max(st - k - w * t, 0)
    lhs = t * first * first + s * second * second + st * (s - t) ** 2
    return lhs <= st * (slack - 4 * k)


def minimal_w(
    s: int, t: int, k: int, gate: GateParams, tables: NumberTables | None = None
) -> int | None:
    """Return the smallest w in [1, n-s-t] satisfying the third-step size bound, or None.

    The left side is nonincreasing in w, so the boundary is found by bisection.
    """
    tables = tables_for(gate.n, tables)
    slack = tables.d_tilde[gate.n]
    hi = gate.n - s - t
    if hi < 1 or not _w_holds(s, t, k, hi, slack):
        return None
    lo = 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _w_holds(s, t, k, mid, slack):
            hi = mid
        else:
            lo = mid + 1
    return lo


def certify_third_step(
    gate: GateParams,
    pairs: list[AdmissiblePair] | None = None,
    tables: NumberTables | None = None,
) -> ThirdStepResult:
    """Check both third-step F-inequalities at the minimal w for every pair and k."""
    tables = tables_for(gate.n, tables)
    n = gate.n
    if 4 * tables.d_tilde[n] >= n * n:
        return ThirdStepResult(False, 0, {"reason": "d_tilde(n) >= n^2/4"})
    probes = 0
    for pair in _pairs(gate, pairs, tables):
        s, t = pair.s, pair.t
        cap = _cap(s, t, gate.delta)
        for k in range(gate.half + 1):
            w = minimal_w(s, t, k, gate, tables)
            if w is None:
                continue
            probes += 1
            wk_t = Fraction(w * k, t)
            carried = gate.half - k + wk_t
            rhs = gate.p - 2 * k + wk_t
            if f(s, w - carried / s, cap) <= rhs or f(w, s - carried / w, cap) <= rhs:
                return ThirdStepResult(False, probes, {"s": s, "t": t, "k": k, "w": w})
    return ThirdStepResult(True, probes)


def eta_bound(
    gate: GateParams,
    pairs: list[AdmissiblePair] | None = None,
    tables: NumberTables | None = None,
) -> Fraction:
    """Return floor(P/2) / min{s*t : (s, t) admissible}.

    Raises:
        EmptyAdmissibleSetError: If no pair is admissible.
    """
    tables = tables_for(gate.n, tables)
    found = _pairs(gate, pairs, tables)
    if not found:
        raise EmptyAdmissibleSetError(gate.n, gate.delta)
    return Fraction(max(gate.half, 0), min(pair.product for pair in found))


# ---------------------------------------------------------------------------
# Per-configuration bounds
# ---------------------------------------------------------------------------


def derive_bounds(
    config: PartConfig, gate: GateParams, eta: Fraction, tables: NumberTables | None = None
) -> DerivedBounds | Pruned:
    """Compute M-bar and the core sizes, pruning on the four part-size inequalities."""
    tables = tables_for(gate.n, tables)
    n, delta = gate.n, gate.delta
    x, y, u, b = config.x_star, config.y_star, config.u, config.b_xy
    slack = tables.d_tilde[n] - 4 * b
    remaining = gate.half - b

    m_bar = x + y - (n + 1) // 2
    spread = (1 - eta) * (Fraction(n, 4) - Fraction(delta, 2))
    if spread > 0:
        m_bar = min(m_bar, floor(remaining / spread * (1 + Fraction(1, u))))
    if m_bar < 0:
        return Pruned(PRUNE_M_BAR_NEGATIVE)
    if abs(x - y) > m_bar + delta:
        return Pruned(PRUNE_PART_DIFFERENCE)

    x_bar = m_bar + min(x - y + delta, 0)
    y_bar = m_bar + min(y - x + delta, 0)
    x_min = x - x_bar
    y_min = y - y_bar
    if x_min <= 0 or y_min <= 0:
        return Pruned(PRUNE_EMPTY_CORE)

    keep = 1 - eta
    core = x_min * max(keep * y_min - u, 0) ** 2 + y_min * max(keep * x_min - u, 0) ** 2
    if core > slack:
        return Pruned(PRUNE_CORE_DEGREE)
    outside = x_min * max(keep * u - y, 0) ** 2 + y_min * max(keep * u - x, 0) ** 2
    if outside > slack:
        return Pruned(PRUNE_OUTSIDE_DEGREE)

    return DerivedBounds(
        eta=eta,
        m_bar=m_bar,
        x_bar_max=x_bar,
        y_bar_max=y_bar,
        x_min=x_min,
        y_min=y_min,
        m_cap=_cap(x, y, delta),
    )


def tau_coefficients(config: PartConfig, bounds: DerivedBounds) -> tuple[Fraction, Fraction]:
    """Return (C[b_XY], C[floor(P/2) - b_XY])."""
    x_min, y_min, u = bounds.x_min, bounds.y_min, config.u
    spill = 1 + Fraction(bounds.x_bar_max, x_min) + Fraction(bounds.y_bar_max, y_min)
    c_bxy = spill + Fraction(u * (config.x_star + config.y_star), x_min * y_min)
    c_rest = spill * (Fraction(1, x_min) + Fraction(1, y_min) + Fraction(1, u))
    return c_bxy, c_rest


def compute_tau(config: PartConfig, bounds: DerivedBounds, gate: GateParams) -> int:
    """Bound the number of edges between X and Y not colored with the primary color."""
    c_bxy, c_rest = tau_coefficients(config, bounds)
    b = config.b_xy
    return floor(c_bxy * b + c_rest * (gate.half - b) + bounds.x_bar_max * bounds.y_bar_max)


def _bmax_large(u: int, own: int, other: int, tau: int, quota: int) -> int | None:
    for b in range(u, -1, -1):
        if (u - b) * other + bip(own - 1) + bip(b) + tau - b >= quota:
            return b
    return None


def _bmax_small(u: int, own: int, other: int, tau: int, quota: int, delta: int) -> int | None:
    for b in range(u, -1, -1):
        ends = (max(other - (u - b + delta), 0), min(other, other - (u - b - delta)))
        for b_other in ends:
            total = (u - b) * (other - b_other) + bip(own - 1) + bip(b) + bip(b_other)
            if total + tau - b - b_other >= quota:
                return b
    return None


def _bootstrap(
    bmax: int, config: PartConfig, bounds: DerivedBounds, gate: GateParams, other: int
) -> tuple[int, int]:
    # Returns the tightened bound and b_{U,other}.
    u, b = config.u, config.b_xy
    half = gate.half
    b_u_other = (u * b + half - b) * other // (bounds.x_min * bounds.y_min)
    excess = max(b - other, 0)
    budget = gate.p - 2 * excess + b_u_other
    tighten = 2 * bmax <= u
    if not tighten:
        shortfall = (gate.p - 2 * excess + 2 * b_u_other) // (2 * other)
        cap = Fraction(config.x_star + config.y_star + gate.delta, 2)
        tighten = f(other, u - shortfall, cap) > budget
    if tighten:
        bmax = min(bmax, (half - excess + b_u_other) // other)
    return bmax, b_u_other


def max_bu(
    config: PartConfig,
    bounds: DerivedBounds,
    tau: int,
    gate: GateParams,
    tables: NumberTables | None = None,
    small_n_threshold: int | None = None,
) -> MaxBadEdges | Pruned:
    """Bound max b_U over X* and over Y*, or prune when no vertex can reach its quota."""
    tables = tables_for(gate.n, tables)
    threshold = (
        default_config().small_n_threshold if small_n_threshold is None else small_n_threshold
    )
    quota = tables.quota(gate.n)
    x, y, u = config.x_star, config.y_star, config.u

    if gate.n >= threshold:
        if bip(x) + bip(y) + bip(u) + tau > quota - 1:
            return MaxBadEdges(u, u)
        bx = _bmax_large(u, x, y, tau, quota)
        by = _bmax_large(u, y, x, tau, quota)
        if bx is None or by is None:
            return Pruned(PRUNE_NO_QUOTA)
        return MaxBadEdges(bx, by)

    bx = _bmax_small(u, x, y, tau, quota, gate.delta)
    by = _bmax_small(u, y, x, tau, quota, gate.delta)
    if bx is None or by is None:
        return Pruned(PRUNE_NO_QUOTA)
    bx, b_uystar = _bootstrap(bx, config, bounds, gate, other=y)
    by, b_uxstar = _bootstrap(by, config, bounds, gate, other=x)
    return MaxBadEdges(bx, by, b_uystar, b_uxstar)


def bxy_feasible(
    config: PartConfig, bounds: DerivedBounds, maxbu: MaxBadEdges, gate: GateParams
) -> bool:
    """Check both counting bounds on b_XY implied by the b_U bounds."""
    b = config.b_xy
    lhs = (config.u - maxbu.x - maxbu.y) * b
    if lhs > gate.half:
        return False
    spare = bounds.x_bar_max + bounds.y_bar_max + min(maxbu.x, maxbu.y)
    return lhs <= b * (b - 1) // 2 + b * spare


# ---------------------------------------------------------------------------
# Prune audit
# ---------------------------------------------------------------------------


class PruneAuditor:
    """Re-derives every ``every``-th prune from the configuration alone."""

    def __init__(self, gate: GateParams, eta: Fraction, tables: NumberTables, every: int) -> None:
        """Bind the gate context; ``every == 0`` disables auditing."""
        self.gate = gate
        self.eta = eta
        self.tables = tables
        self.every = every
        self.seen = 0
        self.audited = 0

    def observe(self, config: PartConfig, reason: str, threshold: int) -> None:
        """Count one prune and audit it when its turn comes.

        Raises:
            AuditMismatchError: If the independent evaluation does not confirm the prune.
        """
        if self.every <= 0:
            return
        self.seen += 1
        if self.seen % self.every:
            return
        self.audited += 1
        if not self._confirms(config, reason, threshold):
            raise AuditMismatchError(reason, f"n={self.gate.n} {config}")

    def _core(self, config: PartConfig) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        # M-bar from scratch, without the integer shortcuts of derive_bounds.
        n, delta = self.gate.n, self.gate.delta
        x, y, u = config.x_star, config.y_star, config.u
        limit = Fraction(x + y - (n + 1) // 2)
        denominator = (1 - self.eta) * (n - 2 * delta) / 4
        if denominator > 0:
            ratio = Fraction(self.gate.p // 2 - config.b_xy) * (u + 1) / (u * denominator)
            limit = min(limit, Fraction(floor(ratio)))
        x_bar = limit + min(Fraction(x - y + delta), Fraction(0))
        y_bar = limit + min(Fraction(y - x + delta), Fraction(0))
        return limit, x_bar, y_bar, Fraction(x) - x_bar

    def _confirms(self, config: PartConfig, reason: str, threshold: int) -> bool:
        n, delta = self.gate.n, self.gate.delta
        x, y, u, b = config.x_star, config.y_star, config.u, config.b_xy
        rhs = Fraction(self.tables.d_tilde[n] - 4 * b)
        limit, x_bar, y_bar, x_min = self._core(config)
        y_min = Fraction(y) - y_bar
        keep = 1 - self.eta

        def pos_sq(value: Fraction) -> Fraction:
            return value * value if value > 0 else Fraction(0)

        if reason == PRUNE_M_BAR_NEGATIVE:
            return limit < 0
        if reason == PRUNE_PART_DIFFERENCE:
            return abs(x - y) > limit + delta
        if reason == PRUNE_EMPTY_CORE:
            return x_min <= 0 or y_min <= 0
        if reason == PRUNE_CORE_DEGREE:
            return x_min * pos_sq(keep * y_min - u) + y_min * pos_sq(keep * x_min - u) > rhs
        if reason == PRUNE_OUTSIDE_DEGREE:
            return x_min * pos_sq(keep * u - y) + y_min * pos_sq(keep * u - x) > rhs
        bounds = derive_bounds(config, self.gate, self.eta, self.tables)
        if isinstance(bounds, Pruned):
            return False
        tau = compute_tau(config, bounds, self.gate)
        maxbu = max_bu(config, bounds, tau, self.gate, self.tables, threshold)
        if reason == PRUNE_NO_QUOTA:
            return isinstance(maxbu, Pruned)
        if reason == PRUNE_BXY and not isinstance(maxbu, Pruned):
            width = u - maxbu.x - maxbu.y
            return width * b > self.gate.p // 2 or 2 * width * b > b * (b - 1) + 2 * b * (
                bounds.x_bar_max + bounds.y_bar_max + min(maxbu.x, maxbu.y)
            )
        return False


# ---------------------------------------------------------------------------
# Gate certification
# ---------------------------------------------------------------------------


def _resolve(
    config: PartConfig,
    gate: GateParams,
    eta: Fraction,
    tables: NumberTables,
    threshold: int,
) -> DerivedBounds | Pruned:
    bounds = derive_bounds(config, gate, eta, tables)
    if isinstance(bounds, Pruned):
        return bounds
    c_bxy, c_rest = tau_coefficients(config, bounds)
    tau = compute_tau(config, bounds, gate)
    maxbu = max_bu(config, bounds, tau, gate, tables, threshold)
    if isinstance(maxbu, Pruned):
        return maxbu
    if not bxy_feasible(config, bounds, maxbu, gate):
        return Pruned(PRUNE_BXY)
    return replace(
        bounds,
        tau=tau,
        c_bxy=c_bxy,
        c_rest=c_rest,
        max_bu_x=maxbu.x,
        max_bu_y=maxbu.y,
        b_uystar=maxbu.b_uystar,
    )


def iter_part_configs(n: int) -> Iterator[tuple[int, int, int]]:
    """Yield (x_star, y_star, u) with x_star + y_star >= ceil(n/2), u outer."""
    for u in range(1, n - 1):
        if n - u < (n + 1) // 2:
            break
        for x_star in range(1, n - u):
            yield x_star, n - u - x_star, u


def certify_gate_empty(
    gate: GateParams,
    tables: NumberTables | None = None,
    config: VerifyConfig | None = None,
) -> GateCertificate:
    """Certify that no coloring lies in the gate class, or report the first survivor."""
    cfg = config or default_config()
    if gate.p < 0:
        return GateCertificate(gate, Verdict.EMPTY_TRIVIAL)
    tables = tables_for(gate.n, tables)
    n = gate.n
    stats = GateStats()

    def failed(stage: str, detail: dict[str, Any] | None = None) -> GateCertificate:
        logger.info("gate n=%d delta=%d P=%d failed at %s", n, gate.delta, gate.p, stage)
        return GateCertificate(gate, Verdict.FAILED, stats, None, stage, detail)

    if not check_xy_assumption(n, tables):
        return failed("xy_assumption")
    pairs = enumerate_admissible(n, gate.delta, tables)
    stats.pairs = len(pairs)
    if not pairs:
        stats.prune(PRUNE_NO_ADMISSIBLE)
        return GateCertificate(gate, Verdict.EMPTY_VERIFIED, stats)

    failing = certify_second_step(gate, pairs, tables)
    if failing:
        return failed("second_step", {"pairs": [[pair.s, pair.t] for pair in failing]})
    third = certify_third_step(gate, pairs, tables)
    stats.third_step_probes = third.probes
    if not third.ok:
        return failed("third_step", third.failure)

    eta = eta_bound(gate, pairs, tables)
    auditor = PruneAuditor(gate, eta, tables, cfg.audit_every)
    threshold = cfg.small_n_threshold
    for x_star, y_star, u in iter_part_configs(n):
        for b_xy in range(gate.half + 1):
            part = PartConfig(x_star, y_star, u, b_xy)
            stats.configs += 1
            outcome = _resolve(part, gate, eta, tables, threshold)
            if isinstance(outcome, Pruned):
                stats.prune(outcome.reason)
                auditor.observe(part, outcome.reason, threshold)
                if cfg.early_exit_monotone and outcome.reason in MONOTONE_PRUNES:
                    rest = gate.half - b_xy
                    stats.configs += rest
                    stats.prune(outcome.reason, rest)
                    break
                continue
            slack = outcome.tau - 2 * min(x_star, y_star, u)
            stats.observe_slack(slack)
            if slack > 0:
                detail = {"x_star": x_star, "y_star": y_star, "u": u, "b_xy": b_xy}
                detail.update(outcome.record())
                cert = failed("enumeration", detail)
                cert.eta = eta
                return cert

    logger.debug(
        "gate n=%d delta=%d P=%d empty: %d configs, %d audited",
        n,
        gate.delta,
        gate.p,
        stats.configs,
        auditor.audited,
    )
    return GateCertificate(gate, Verdict.EMPTY_VERIFIED, stats, eta)
