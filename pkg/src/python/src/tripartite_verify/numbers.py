"""Exact integer sequences behind the triangle bound.

Everything here is integer or Fraction arithmetic:

- bip(x): maximum edge count of a bipartite graph on x vertices
- g_k(k, n): edge count of the balanced iterated blowup of a k-edge
- t_tri(n): maximum number of cyclic triangles in an n-vertex tournament
- d(n) = t_tri(n) - g_3(n) and its six-case recursion
- d_tilde(n) = n(n+1)(n-1)/3 - 8(g_3(n)+1) and Delta_max(n) = isqrt(d_tilde(n))

Path: src/python/src/tripartite_verify/numbers.py
"""

from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache, lru_cache
import logging
from math import isqrt, prod

from .core.config import default_config
from .core.error import CutoffExceededError, InvalidQueryError

logger = logging.getLogger(__name__)

# d(n) <= D_LOG_NUMERATOR / D_LOG_DENOMINATOR * n * log2(n) on this range.
D_LOG_NUMERATOR = 5891
D_LOG_DENOMINATOR = 100000
D_LOG_RANGE = (200, 600)


# ---------------------------------------------------------------------------
# Elementary sequences
# ---------------------------------------------------------------------------


def bip(x: int) -> int:
    """Return floor(x/2) * ceil(x/2), or 0 when x <= 0."""
    if x <= 0:
        return 0
    return (x // 2) * ((x + 1) // 2)


def balanced_parts(k: int, n: int) -> list[int]:
    """Split n into k parts of size floor(n/k) or ceil(n/k), largest first."""
    q, r = divmod(n, k)
    return [q + 1] * r + [q] * (k - r)


def balanced_product(k: int, n: int) -> int:
    """Edge count of the balanced complete k-partite k-graph on n vertices."""
    return prod(balanced_parts(k, n))


@cache
def g_k(k: int, n: int) -> int:
    """Return the edge count of the balanced iterated blowup on n vertices.

    Args:
        k: Uniformity, at least 3.
        n: Number of vertices, nonnegative.

    Returns:
        0 for n < k, otherwise the product of the balanced parts plus the
        blowup values of each part.
    """
    if k < 3:
        raise InvalidQueryError(f"uniformity must be at least 3, got {k}")
    if n < 0:
        raise InvalidQueryError(f"vertex count must be nonnegative, got {n}")
    if n < k:
        return 0
    q, r = divmod(n, k)
    return (q + 1) ** r * q ** (k - r) + r * g_k(k, q + 1) + (k - r) * g_k(k, q)


def _partitions(n: int, parts: int, max_part: int) -> Iterator[tuple[int, ...]]:
    """Yield nonincreasing tuples of positive integers summing to n."""
    if parts == 1:
        if 1 <= n <= max_part:
            yield (n,)
        return
    for first in range(min(n - parts + 1, max_part), 0, -1):
        if (parts - 1) * first < n - first:
            break
        for rest in _partitions(n - first, parts - 1, first):
            yield (first, *rest)


@cache
def _full_max(k: int, n: int) -> int:
    if n < k:
        return 0
    best = 0
    for parts in _partitions(n, k, n):
        value = prod(parts) + sum(_full_max(k, s) for s in parts)
        best = max(best, value)
    return best


def g_k_full_max(k: int, n: int, cutoff: int | None = None) -> int:
    """Maximize the iterated blowup over all compositions into k positive parts.

    Independent oracle for the balanced recursion in ``g_k``.

    Raises:
        CutoffExceededError: If n is above the enumeration cutoff.
    """
    limit = default_config().full_max_cutoff if cutoff is None else cutoff
    if n > limit:
        raise CutoffExceededError("g_k_full_max", n, limit)
    if k < 3:
        raise InvalidQueryError(f"uniformity must be at least 3, got {k}")
    return _full_max(k, n)


def t_tri(n: int) -> int:
    """Maximum number of cyclic triangles in a tournament on n vertices."""
    if n % 2:
        return n * (n * n - 1) // 24
    return n * (n * n - 4) // 24


@cache
def d_by_recursion(n: int) -> int:
    """Evaluate d(n) from the six-case recursion on n = 6x + j, j in [-2, 3]."""
    if n < 1:
        raise InvalidQueryError(f"d(n) needs n >= 1, got {n}")
    if n <= 3:
        return 0
    x = (n + 2) // 6
    return _d_step(n - 6 * x, x, d_by_recursion)


def _d_step(j: int, x: int, d: Callable[[int], int]) -> int:
    if j == -2:
        return 2 * d(2 * x - 1) + d(2 * x)
    if j == -1:
        return d(2 * x - 1) + 2 * d(2 * x) + x
    if j == 0:
        return 3 * d(2 * x)
    if j == 1:
        return 2 * d(2 * x) + d(2 * x + 1) + x
    if j == 2:
        return d(2 * x) + 2 * d(2 * x + 1)
    return 3 * d(2 * x + 1)


def d_recursion_table(max_n: int) -> list[int]:
    """Bottom-up d(n) from the recursion alone, indexed 0..max_n (index 0 unused)."""
    table = [0] * (max_n + 1)
    for n in range(4, max_n + 1):
        x = (n + 2) // 6
        table[n] = _d_step(n - 6 * x, x, table.__getitem__)
    return table


def balanced_ternary_weight(n: int) -> int:
    """Count the nonzero digits of n in balanced ternary."""
    weight = 0
    while n:
        r = n % 3
        if r == 0:
            n //= 3
        elif r == 1:
            weight += 1
            n //= 3
        else:
            weight += 1
            n = (n + 1) // 3
    return weight


def is_nice(n: int) -> bool:
    """True iff n is 3^a, 3^a + 3^b or 3^a - 3^b."""
    if n < 1:
        raise InvalidQueryError(f"is_nice needs n >= 1, got {n}")
    return balanced_ternary_weight(n) <= 2


def d_tilde(n: int) -> int:
    """Return n(n+1)(n-1)/3 - 8(g_3(n)+1); may be negative."""
    return n * (n + 1) * (n - 1) // 3 - 8 * (g_k(3, n) + 1)


def delta_max(n: int) -> int | None:
    """Largest Delta >= 0 with Delta^2 <= d_tilde(n), or None when d_tilde(n) < 0."""
    slack = d_tilde(n)
    if slack < 0:
        return None
    return isqrt(slack)


# ---------------------------------------------------------------------------
# Exact log2 bounds
# ---------------------------------------------------------------------------


def log2_bounds(n: int, bits: int | None = None) -> tuple[Fraction, Fraction]:
    """Return rationals (lower, upper) bracketing log2(n).

    The fractional part is produced by repeated squaring in fixed point with
    ``bits`` output bits. The lower sequence rounds every product down and the
    upper sequence rounds up, so lower <= log2(n) <= upper.
    """
    if n < 1:
        raise InvalidQueryError(f"log2 needs n >= 1, got {n}")
    bits = default_config().log2_bits if bits is None else bits
    m = n.bit_length() - 1
    scale = max(bits + 64, m)
    one = 1 << scale
    lo = hi = n << (scale - m)
    lo_frac = hi_frac = 0
    for _ in range(bits):
        lo = (lo * lo) >> scale
        hi = -((-hi * hi) >> scale)
        lo_frac <<= 1
        hi_frac <<= 1
        if lo >= 2 * one:
            lo_frac |= 1
            lo >>= 1
        if hi >= 2 * one:
            hi_frac |= 1
            hi = (hi + 1) >> 1
    denominator = 1 << bits
    lower = m + Fraction(lo_frac, denominator)
    upper = m + Fraction(hi_frac + 2, denominator)
    return lower, upper


def check_d_log_bound(n: int, d_value: int, bits: int | None = None) -> bool:
    """Check d(n) <= 0.05891 * n * log2(n) using the lower bound on log2(n)."""
    lower, _ = log2_bounds(n, bits)
    return Fraction(d_value) <= Fraction(D_LOG_NUMERATOR, D_LOG_DENOMINATOR) * n * lower


# ---------------------------------------------------------------------------
# Memoized tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NumberTables:
    """Exact sequence values for every n in [0, max_n], indexed by n.

    ``t_tri``, ``d`` and ``d_tilde`` are filled only for k = 3.
    """

    k: int
    max_n: int
    g: tuple[int, ...]
    t_tri: tuple[int, ...] = field(default=())
    d: tuple[int, ...] = field(default=())
    d_tilde: tuple[int, ...] = field(default=())

    @classmethod
    def build(cls, max_n: int, k: int = 3) -> "NumberTables":
        """Compute all tables bottom-up."""
        if k < 3:
            raise InvalidQueryError(f"uniformity must be at least 3, got {k}")
        if max_n < 1:
            raise InvalidQueryError(f"max_n must be positive, got {max_n}")
        g = [0] * (max_n + 1)
        for n in range(k, max_n + 1):
            q, r = divmod(n, k)
            g[n] = (q + 1) ** r * q ** (k - r) + r * g[q + 1] + (k - r) * g[q]
        if k != 3:
            return cls(k=k, max_n=max_n, g=tuple(g))

        t = [t_tri(n) for n in range(max_n + 1)]
        d = [t[n] - g[n] for n in range(max_n + 1)]
        dt = [n * (n + 1) * (n - 1) // 3 - 8 * (g[n] + 1) for n in range(max_n + 1)]
        logger.debug("built number tables up to n=%d", max_n)
        return cls(k=k, max_n=max_n, g=tuple(g), t_tri=tuple(t), d=tuple(d), d_tilde=tuple(dt))

    def _require(self, n: int) -> None:
        if not 0 <= n <= self.max_n:
            raise InvalidQueryError(f"n={n} outside the table range [0, {self.max_n}]")

    def gap(self, n: int) -> int:
        """Return g(n) - g(n-1)."""
        self._require(n)
        return self.g[n] - self.g[n - 1]

    def quota(self, n: int) -> int:
        """Triangles every vertex of a minimal counterexample must lie in."""
        return self.gap(n) + 1

    def delta_max(self, n: int) -> int | None:
        """Largest Delta with Delta^2 <= d_tilde(n), None when negative."""
        self._require(n)
        slack = self.d_tilde[n]
        return None if slack < 0 else isqrt(slack)

    def rows(self, fn: str, start: int = 1) -> list[tuple[int, int | None]]:
        """Return (n, value) rows for one of g3, t, d, dtilde, deltamax."""
        columns: dict[str, Callable[[int], int | None]] = {
            "g3": self.g.__getitem__,
            "t": self.t_tri.__getitem__,
            "d": self.d.__getitem__,
            "dtilde": self.d_tilde.__getitem__,
            "deltamax": self.delta_max,
        }
        if fn not in columns:
            raise InvalidQueryError(f"unknown table {fn!r}; choose from {sorted(columns)}")
        getter = columns[fn]
        return [(n, getter(n)) for n in range(start, self.max_n + 1)]


@lru_cache(maxsize=4)
def shared_tables(max_n: int = 700) -> NumberTables:
    """Return process-wide k = 3 tables covering [0, max_n]."""
    return NumberTables.build(max_n)


# ---------------------------------------------------------------------------
# Identity checks
# ---------------------------------------------------------------------------


@dataclass
class IdentityReport:
    """Counterexamples found by ``check_sequence_identities`` (empty lists mean pass)."""

    checked: dict[str, int] = field(default_factory=dict)
    failures: dict[str, list[int | tuple[int, int]]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """Return True if no identity failed."""
        return not any(self.failures.values())

    def record(self, name: str, count: int, failures: list) -> None:
        """Store the outcome of one identity family."""
        self.checked[name] = count
        self.failures[name] = failures


def check_sequence_identities(
    recursion_max: int = 10**6,
    nice_max: int = 10**5,
    full_max: int = 60,
    k_max: int = 8,
    difference_max: int = 200,
) -> IdentityReport:
    """Run every exact identity relating the sequences in this module."""
    report = IdentityReport()
    top = max(recursion_max, nice_max, D_LOG_RANGE[1])
    tables = NumberTables.build(top)

    recursion = d_recursion_table(recursion_max)
    report.record(
        "d_recursion",
        recursion_max,
        [n for n in range(1, recursion_max + 1) if recursion[n] != tables.d[n]],
    )
    report.record(
        "d_nonnegative",
        top,
        [n for n in range(1, top + 1) if tables.d[n] < 0],
    )
    report.record(
        "d_zero_iff_nice",
        nice_max,
        [n for n in range(1, nice_max + 1) if (tables.d[n] == 0) != is_nice(n)],
    )
    report.record(
        "d_tilde_closed_form",
        top,
        [
            n
            for n in range(3, top + 1)
            if tables.d_tilde[n] != (n % 2 == 0) * n + 8 * (tables.d[n] - 1)
        ],
    )
    report.record(
        "full_max",
        full_max - 2,
        [n for n in range(3, full_max + 1) if g_k_full_max(3, n, cutoff=full_max) != tables.g[n]],
    )
    closed: list[int | tuple[int, int]] = []
    difference: list[int | tuple[int, int]] = []
    for k in range(3, k_max + 1):
        closed.extend(
            (k, n) for n in range(k, k * (k - 1) + 1) if g_k(k, n) != balanced_product(k, n)
        )
        difference.extend(
            (k, n)
            for n in range(k + 1, difference_max + 1)
            if balanced_product(k, n) - balanced_product(k, n - 1)
            != balanced_product(k - 1, n - (n + k - 1) // k)
        )
    report.record("closed_product", k_max - 2, closed)
    report.record("difference", k_max - 2, difference)
    lo, hi = D_LOG_RANGE
    report.record(
        "d_log_bound",
        hi - lo,
        [n for n in range(lo, hi) if not check_d_log_bound(n, tables.d[n])],
    )
    logger.info("sequence identities: %s", "ok" if report.ok else "FAILED")
    return report
