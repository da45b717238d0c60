"""Admissible pairs: candidate sizes (|X|, |Y|) of the pivot's largest color neighborhood.

A pair (s, t) of sizes in [1, n-2] is admissible for (n, Delta) when

- (a) s + t >= ceil(n/2),
- (b) |s - t| <= Delta,
- (c) the smallest d1 + d2 of a degree pattern reaching the triangle quota with
  d1 <= s + t exists and is at most 8n/9,
- (d) s*t + bip(n-1-s-t) >= quota(n),

where quota(n) = g_3(n) - g_3(n-1) + 1.
"""

from dataclasses import dataclass
from functools import lru_cache
import logging

from .numbers import NumberTables, bip, shared_tables

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class AdmissiblePair:
    """An ordered admissible pair with the minimal degree-pattern sum ``s_min``."""

    s: int
    t: int
    s_min: int

    @property
    def product(self) -> int:
        """Return s * t."""
        return self.s * self.t


def tables_for(n: int, tables: NumberTables | None) -> NumberTables:
    """Return ``tables`` when it covers n, else the shared tables."""
    if tables is not None and tables.max_n >= n:
        return tables
    return shared_tables(max(n, 700))


def pattern_triangles(n: int, d1: int, d2: int) -> int:
    """Most triangles through a vertex with color degrees d1, then d2 repeated, then the rest."""
    q, r = divmod(n - 1 - d1, d2)
    return bip(d1) + q * bip(d2) + bip(r)


@lru_cache(maxsize=1024)
def _s_min_prefix(n: int, quota: int) -> tuple[int | None, ...]:
    # prefix[c] = min d1 + d2 over qualifying patterns with d1 <= c.
    best: int | None = None
    prefix: list[int | None] = [None]
    for d1 in range(1, n):
        for d2 in range(1, d1 + 1):
            if pattern_triangles(n, d1, d2) >= quota:
                if best is None or d1 + d2 < best:
                    best = d1 + d2
                break
        prefix.append(best)
    return tuple(prefix)


def compute_s_min(n: int, cap: int, tables: NumberTables | None = None) -> int | None:
    """Return the minimal d1 + d2 with d2 <= d1 <= cap reaching the quota, or None."""
    if cap < 1:
        return None
    tables = tables_for(n, tables)
    prefix = _s_min_prefix(n, tables.quota(n))
    return prefix[min(cap, n - 1)]


def enumerate_admissible(
    n: int, delta: int, tables: NumberTables | None = None
) -> list[AdmissiblePair]:
    """Return every ordered admissible pair for (n, delta), sorted by (s, t)."""
    tables = tables_for(n, tables)
    quota = tables.quota(n)
    lower = (n + 1) // 2
    pairs: list[AdmissiblePair] = []
    for s in range(1, n - 1):
        for t in range(max(1, s - delta), min(n - 2, s + delta) + 1):
            if s + t < lower:
                continue
            if s * t + bip(n - 1 - s - t) < quota:
                continue
            s_min = compute_s_min(n, s + t, tables)
            if s_min is None or 9 * s_min > 8 * n:
                continue
            pairs.append(AdmissiblePair(s, t, s_min))
    logger.debug("n=%d delta=%d: %d admissible pairs", n, delta, len(pairs))
    return pairs
