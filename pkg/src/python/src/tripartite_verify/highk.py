"""Numeric conditions for uniformity k >= 7.

For n = k(k-1) + 1 the induction for large k needs

    alpha^((k-2)/2) * (k/(k-3))^(k-2) < exp(-2 gamma),

where alpha and beta come from (k, n) and gamma is the positive root of
exp(-2g)(1+g)^2 = 1 - beta. Doubles decide the comparison when the margin
clears ``highk_safety``; closer calls are re-evaluated with mpmath.

Path: src/python/src/tripartite_verify/highk.py
"""

from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
import itertools
import logging
import math
import random
from typing import Any

import mpmath

from .core.config import default_config
from .core.error import InvalidQueryError
from .numbers import g_k

logger = logging.getLogger(__name__)

# Checked against triangle counts of random tripartite graphs.
LW_TOLERANCE = 1e-9


@dataclass(frozen=True)
class HighKProbe:
    """All quantities of the k >= 7 condition at one (k, n)."""

    k: int
    n: int
    alpha: float
    beta: float
    gamma: float
    lhs: float
    lhs_e3: float
    rhs: float
    margin: float
    precision: str = "double"

    def record(self) -> dict[str, Any]:
        """Return a JSON-ready mapping."""
        return dict(self.__dict__)


def min_n(k: int) -> int:
    """Return k(k-1) + 1, the smallest n the condition is checked at."""
    return k * (k - 1) + 1


def _alpha_beta(k: Any, n: Any) -> tuple[Any, Any]:
    # Works for floats and mpmath numbers alike.
    shrink = 1 - k**3 / (2 * n * n)
    alpha = 1 - (1 - 1 / k) ** (k / (k - 2)) * shrink ** (2 / (k - 2))
    beta = k**3 / (2 * n * n) + (alpha * k / (k - 1)) ** (k / 2)
    return alpha, beta


def alpha_beta(k: int, n: int) -> tuple[float, float]:
    """Return (alpha, beta) in double precision.

    Raises:
        InvalidQueryError: If k < 4 or n < k(k-1) + 1.
    """
    if k < 4 or n < min_n(k):
        raise InvalidQueryError(f"alpha/beta need k >= 4 and n >= k(k-1)+1, got k={k}, n={n}")
    return _alpha_beta(float(k), float(n))


def _bisect_gamma(target: Any, exp: Callable[[Any], Any], tolerance: Any, zero: Any) -> Any:
    def value(g: Any) -> Any:
        return exp(-2 * g) * (1 + g) ** 2

    lo, hi = zero, zero + 1
    while value(hi) > target:
        lo, hi = hi, 2 * hi
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        if value(mid) > target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def solve_gamma(beta: float, tolerance: float | None = None) -> float:
    """Return the positive root of exp(-2g)(1+g)^2 = 1 - beta.

    Raises:
        InvalidQueryError: If beta is not in (0, 1).
    """
    if not 0 < beta < 1:
        raise InvalidQueryError(f"beta must lie in (0, 1), got {beta}")
    tolerance = default_config().gamma_tolerance if tolerance is None else tolerance
    return _bisect_gamma(1 - beta, math.exp, tolerance, 0.0)


def probe(k: int, n: int) -> HighKProbe:
    """Evaluate the condition at (k, n) in double precision."""
    alpha, beta = alpha_beta(k, n)
    if not (0 < alpha < 1 and 0 < beta < 1):
        nan = float("nan")
        return HighKProbe(k, n, alpha, beta, nan, nan, nan, nan, nan)
    gamma = solve_gamma(beta)
    scale = alpha ** ((k - 2) / 2)
    lhs = scale * (k / (k - 3)) ** (k - 2)
    lhs_e3 = scale * math.exp(3)
    rhs = math.exp(-2 * gamma)
    return HighKProbe(k, n, alpha, beta, gamma, lhs, lhs_e3, rhs, rhs - lhs)


def _precise_margin(k: int, n: int, use_e3_bound: bool, dps: int) -> float:
    with mpmath.workdps(dps):
        kk, nn = mpmath.mpf(k), mpmath.mpf(n)
        alpha, beta = _alpha_beta(kk, nn)
        if not (0 < alpha < 1 and 0 < beta < 1):
            return float("-inf")
        tolerance = mpmath.mpf(10) ** (-(dps - 10))
        gamma = _bisect_gamma(1 - beta, mpmath.exp, tolerance, mpmath.mpf(0))
        factor = mpmath.e**3 if use_e3_bound else (kk / (kk - 3)) ** (kk - 2)
        margin = mpmath.exp(-2 * gamma) - alpha ** ((kk - 2) / 2) * factor
        return float(margin)


def check_big_nk(
    k: int, n: int, safety: float | None = None, use_e3_bound: bool = False
) -> bool:
    """Decide lhs < exp(-2 gamma), escalating to mpmath when the margin is within ``safety``.

    ``use_e3_bound`` compares alpha^((k-2)/2) * e^3 instead of the literal factor.
    """
    cfg = default_config()
    safety = cfg.highk_safety if safety is None else safety
    result = probe(k, n)
    if math.isnan(result.rhs):
        return False
    margin = result.rhs - (result.lhs_e3 if use_e3_bound else result.lhs)
    if margin > safety:
        return True
    if margin < -safety:
        return False
    precise = _precise_margin(k, n, use_e3_bound, cfg.highk_mp_dps)
    logger.info("highk k=%d n=%d: escalated margin %.3e -> %.3e", k, n, margin, precise)
    return precise > 0


def scan_big_nk(k_max: int, use_e3_bound: bool = False) -> list[tuple[HighKProbe, bool]]:
    """Probe and decide the condition at n = k(k-1) + 1 for 7 <= k <= k_max."""
    return [
        (probe(k, min_n(k)), check_big_nk(k, min_n(k), use_e3_bound=use_e3_bound))
        for k in range(7, k_max + 1)
    ]


def check_lemma_computation(k: int, n: int) -> bool:
    """Exactly check g_k(n) >= (1 - k^3/(2n^2)) n^k / k^k."""
    if k < 3 or n < min_n(k):
        raise InvalidQueryError(f"need k >= 3 and n >= k(k-1)+1, got k={k}, n={n}")
    return Fraction(g_k(k, n)) >= Fraction(2 * n * n - k**3, 2 * n * n) * Fraction(n**k, k**k)


# ---------------------------------------------------------------------------
# Safeguards
# ---------------------------------------------------------------------------


@dataclass
class MonotonicityReport:
    """Strict-decrease checks of alpha and beta in n and in k."""

    k_max: int
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Return True when every checked step decreased strictly."""
        return not self.violations

    @property
    def first_violation(self) -> str | None:
        """Return the first recorded violation, if any."""
        return self.violations[0] if self.violations else None


def monotonicity_scan(k_max: int) -> MonotonicityReport:
    """Check alpha, beta decrease in n on [k(k-1)+1, 4k^2] and in k at n = k(k-1)+1."""
    if k_max < 8:
        raise InvalidQueryError(f"monotonicity scan needs k_max >= 8, got {k_max}")
    report = MonotonicityReport(k_max=k_max)
    for k in range(7, k_max + 1):
        previous = alpha_beta(k, min_n(k))
        for n in range(min_n(k) + 1, 4 * k * k + 1):
            current = alpha_beta(k, n)
            report.checked += 1
            if not (current[0] < previous[0] and current[1] < previous[1]):
                report.violations.append(f"k={k}: n={n - 1} -> {n}")
            previous = current
    for k in range(7, k_max):
        here, there = alpha_beta(k, min_n(k)), alpha_beta(k + 1, min_n(k + 1))
        report.checked += 1
        if not (there[0] < here[0] and there[1] < here[1]):
            report.violations.append(f"k={k} -> {k + 1} at n=k(k-1)+1")
    logger.info("monotonicity scan to k=%d: %d checks, ok=%s", k_max, report.checked, report.ok)
    return report


def tripartite_triangle_bound_holds(labels: list[int], edges: set[tuple[int, int]]) -> bool:
    """Check triangles <= (edges/3)^(3/2) for a graph whose edges cross a labeling."""
    triangles = sum(
        1
        for a, b, c in itertools.combinations(range(len(labels)), 3)
        if (a, b) in edges and (a, c) in edges and (b, c) in edges
    )
    return triangles <= (len(edges) / 3) ** 1.5 + LW_TOLERANCE


def lw_sample_check(trials: int, seed: int) -> bool:
    """Check the triangle bound on random tripartite graphs with at most 12 vertices."""
    if trials < 1:
        raise InvalidQueryError(f"trials must be positive, got {trials}")
    rng = random.Random(seed)
    for _ in range(trials):
        size = rng.randint(1, 12)
        labels = [rng.randrange(3) for _ in range(size)]
        density = rng.random()
        edges = {
            (a, b)
            for a, b in itertools.combinations(range(size), 2)
            if labels[a] != labels[b] and rng.random() < density
        }
        if not tripartite_triangle_bound_holds(labels, edges):
            return False
    return True
