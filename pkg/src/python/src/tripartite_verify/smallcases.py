"""Degree-sequence arithmetic that rules out a minimal counterexample on 13, 14, 16 or 17 vertices.

Every vertex of a minimal counterexample lies in at least quota(n) monochromatic
triangles, so its color-degree sequence (d^1 >= d^2 >= ...) is one of a short list
of feasible sequences. Summing d^1 and d^1 + d^2 over all vertices then collides
with the global bounds on those sums.

Path: src/python/src/tripartite_verify/smallcases.py
"""

from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import StrEnum
import itertools
import logging
from typing import Any

from .admissible import tables_for
from .core.error import InvalidQueryError, UnsupportedRangeError
from .numbers import NumberTables, bip

logger = logging.getLogger(__name__)

SMALL_CASES = frozenset({13, 14, 16, 17})
SEQUENCE_RANGE = (4, 30)


class CaseVerdict(StrEnum):
    """Outcome of a small-case analysis."""

    CONTRADICTION = "contradiction-established"
    FAILED = "FAILED"


@dataclass(frozen=True, order=True)
class DegreeSequence:
    """Nonincreasing color degrees of one vertex."""

    entries: tuple[int, ...]

    @property
    def d1(self) -> int:
        """Largest color degree."""
        return self.entries[0]

    @property
    def d2(self) -> int:
        """Second largest color degree, 0 for a single color."""
        return self.entries[1] if len(self.entries) > 1 else 0

    @property
    def top_two(self) -> int:
        """Return d^1 + d^2."""
        return self.d1 + self.d2

    def __str__(self) -> str:
        """Render as (d1,d2,...)."""
        return "(" + ",".join(map(str, self.entries)) + ")"


@dataclass(frozen=True)
class BranchResult:
    """One closed (or open) branch of a case analysis."""

    name: str
    assertion: str
    lhs: int | None
    rhs: int
    ok: bool
    tripartitions: tuple["TripartitionResult", ...] = ()

    def record(self) -> dict[str, Any]:
        """Return a JSON-ready mapping."""
        out: dict[str, Any] = {
            "assertion": self.assertion,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ok": self.ok,
        }
        if self.tripartitions:
            out["tripartitions"] = [part.record() for part in self.tripartitions]
        return out


@dataclass(frozen=True)
class TripartitionResult:
    """Inferences that close one tripartition in the same-primary branch."""

    parts: tuple[int, int, int]
    closed_by: tuple[str, ...]
    clique_part: int | None = None
    forced_sum: int | None = None

    @property
    def closed(self) -> bool:
        """Return True when at least one inference closes it."""
        return bool(self.closed_by)

    def record(self) -> dict[str, Any]:
        """Return a JSON-ready mapping."""
        return {
            "parts": list(self.parts),
            "closed_by": list(self.closed_by),
            "clique_part": self.clique_part,
            "forced_sum": self.forced_sum,
        }


@dataclass
class CaseReport:
    """Feasible sequences, cited bounds and branch results for one n."""

    n: int
    feasible_sequences: list[DegreeSequence]
    branches: dict[str, BranchResult] = field(default_factory=dict)
    bounds: dict[str, int | None] = field(default_factory=dict)

    @property
    def verdict(self) -> CaseVerdict:
        """Contradiction only when every branch closes."""
        if self.branches and all(branch.ok for branch in self.branches.values()):
            return CaseVerdict.CONTRADICTION
        return CaseVerdict.FAILED

    @property
    def ok(self) -> bool:
        """Return True when the contradiction is established."""
        return self.verdict is CaseVerdict.CONTRADICTION

    def record(self) -> dict[str, Any]:
        """Return a JSON-ready mapping."""
        return {
            "n": self.n,
            "verdict": str(self.verdict),
            "feasible_sequences": [str(seq) for seq in self.feasible_sequences],
            "bounds": dict(sorted(self.bounds.items())),
            "branches": {name: branch.record() for name, branch in sorted(self.branches.items())},
        }


# ---------------------------------------------------------------------------
# Bounds
# ---------------------------------------------------------------------------


def d1_cap(n: int) -> int:
    """Return floor(2n^2/3), the bound on the sum of d^1 over all vertices."""
    return 2 * n * n // 3


def improved_d1_cap(n: int) -> int:
    """Return floor(2n^2/3 - (n-1)/3), valid when the primary colors are not all equal."""
    return (2 * n * n - n + 1) // 3


def top_two_cap(n: int) -> int:
    """Return floor(8n^2/9), the bound on the sum of d^1 + d^2 over all vertices."""
    return 8 * n * n // 9


# ---------------------------------------------------------------------------
# Feasible sequences
# ---------------------------------------------------------------------------


def _nonincreasing(total: int, largest: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for head in range(min(total, largest), 0, -1):
        for tail in _nonincreasing(total - head, head):
            yield (head, *tail)


def feasible_degree_sequences(n: int, tables: NumberTables | None = None) -> list[DegreeSequence]:
    """Return every degree sequence a vertex of a minimal counterexample can have.

    Sequences sum to n - 1, contain at most one 1, and reach the triangle quota.
    They are ordered by d^1, then by the remaining entries, largest first.

    Raises:
        InvalidQueryError: If n is outside [4, 30].
    """
    lo, hi = SEQUENCE_RANGE
    if not lo <= n <= hi:
        raise InvalidQueryError(f"degree sequences are enumerated for {lo} <= n <= {hi}, got {n}")
    tables = tables_for(n, tables)
    quota = tables.quota(n)
    found = [
        DegreeSequence(entries)
        for entries in _nonincreasing(n - 1, n - 1)
        if entries.count(1) <= 1 and sum(bip(e) for e in entries) >= quota
    ]
    found.sort(key=lambda seq: (seq.d1, tuple(-e for e in seq.entries[1:])))
    return found


# ---------------------------------------------------------------------------
# Counting contradiction
# ---------------------------------------------------------------------------


def _types(sequences: list[DegreeSequence]) -> list[tuple[int, int]]:
    # Only (d1, min d1 + d2 for that d1) matters for the minimum.
    best: dict[int, int] = {}
    for seq in sequences:
        best[seq.d1] = min(best.get(seq.d1, seq.top_two), seq.top_two)
    return sorted(best.items())


def counting_contradiction(
    n: int, cap: int, tables: NumberTables | None = None
) -> int | None:
    """Return min sum of d^1 + d^2 over n feasible sequences with sum d^1 <= cap.

    Solved as a knapsack over (vertices placed, d^1 used). None when no multiset fits.
    """
    types = _types(feasible_degree_sequences(n, tables))
    if not types or cap < 0:
        return None
    # best[used] after j vertices; None marks unreachable.
    best: list[int | None] = [0] + [None] * cap
    for _ in range(n):
        step: list[int | None] = [None] * (cap + 1)
        for used, value in enumerate(best):
            if value is None:
                continue
            for d1, top_two in types:
                nxt = used + d1
                if nxt > cap:
                    continue
                current = step[nxt]
                if current is None or value + top_two < current:
                    step[nxt] = value + top_two
        best = step
    reachable = [value for value in best if value is not None]
    return min(reachable) if reachable else None


def counting_minimum_brute(n: int, cap: int, tables: NumberTables | None = None) -> int | None:
    """Same minimum as ``counting_contradiction``, by enumerating every count vector."""
    sequences = feasible_degree_sequences(n, tables)
    result: int | None = None
    for combo in itertools.combinations_with_replacement(sequences, n):
        if sum(seq.d1 for seq in combo) > cap:
            continue
        total = sum(seq.top_two for seq in combo)
        if result is None or total < result:
            result = total
    return result


def implied_smallest_count(n: int, cap: int, sequences: list[DegreeSequence]) -> int:
    """Minimum number of vertices whose d^1 is the smallest feasible value."""
    values = sorted({seq.d1 for seq in sequences})
    if len(values) < 2:
        return n
    low, nxt = values[0], values[1]
    return max(0, -(-(n * nxt - cap) // (nxt - low)))


def _counting_branch(name: str, n: int, cap: int, tables: NumberTables) -> BranchResult:
    lhs = counting_contradiction(n, cap, tables)
    rhs = top_two_cap(n)
    if lhs is None:
        assertion = f"no multiset of feasible sequences has sum d1 <= {cap}"
    else:
        assertion = f"sum d1+d2 >= {lhs} vs floor(8n^2/9) = {rhs} under sum d1 <= {cap}"
    return BranchResult(name, assertion, lhs, rhs, ok=lhs is None or lhs > rhs)


# ---------------------------------------------------------------------------
# Same primary color
# ---------------------------------------------------------------------------


def _tripartitions(n: int, largest: int) -> list[tuple[int, int, int]]:
    return [
        (a, b, n - a - b)
        for a in range(largest, -1, -1)
        for b in range(min(a, n - a), -1, -1)
        if 0 <= n - a - b <= b
    ]


def same_primary_branch(n: int, tables: NumberTables | None = None) -> BranchResult:
    """Close the branch where every vertex has the same primary color.

    The color-1 graph is tripartite with parts of size at most n - dmin. A part of
    exactly that size forces d^1 = n - p on its vertices; a forced sequence (n-p, p-1)
    makes the part a monochromatic clique. Two forced parts make the tripartition
    complete, which fixes every d^1 and bounds the sum of d^1 + d^2 from below.

    Raises:
        UnsupportedRangeError: If n is not 13 or 16.
    """
    if n not in (13, 16):
        raise UnsupportedRangeError(f"same-primary analysis covers n in {{13, 16}}, got {n}")
    tables = tables_for(n, tables)
    sequences = feasible_degree_sequences(n, tables)
    dmin = min(seq.d1 for seq in sequences)
    largest = n - dmin
    rhs = top_two_cap(n)

    def with_d1(value: int) -> list[DegreeSequence]:
        return [seq for seq in sequences if seq.d1 == value]

    results = []
    for parts in _tripartitions(n, largest):
        closed_by: list[str] = []
        clique_part = None
        for p in sorted(set(parts), reverse=True):
            if p != largest or p < 4:
                continue
            forced = with_d1(n - p)
            if forced and all(len(seq.entries) == 2 and seq.d2 == p - 1 for seq in forced):
                clique_part = p
                closed_by.append("S2")
                break

        forced_sum = None
        if sum(1 for p in parts if p == largest) >= 2:
            total = 0
            for p in parts:
                options = with_d1(n - p)
                if not options:
                    total = None
                    break
                total += p * min(seq.top_two for seq in options)
            forced_sum = total
            if total is None or total > rhs:
                closed_by.append("S3")
        results.append(TripartitionResult(parts, tuple(closed_by), clique_part, forced_sum))

    ok = all(result.closed for result in results)
    assertion = (
        f"every tripartition with parts <= {largest} closes"
        if ok
        else "some tripartition stays open"
    )
    lhs = max((r.forced_sum for r in results if r.forced_sum is not None), default=None)
    return BranchResult("same_primary", assertion, lhs, rhs, ok, tuple(results))


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def verify_small_case(n: int, tables: NumberTables | None = None) -> CaseReport:
    """Run the full case analysis for n in {13, 14, 16, 17}.

    Raises:
        UnsupportedRangeError: For any other n.
    """
    if n not in SMALL_CASES:
        raise UnsupportedRangeError(f"small-case analysis covers {sorted(SMALL_CASES)}, got {n}")
    tables = tables_for(n, tables)
    sequences = feasible_degree_sequences(n, tables)
    report = CaseReport(n=n, feasible_sequences=sequences)
    report.bounds = {
        "d1_cap": d1_cap(n),
        "top_two_cap": top_two_cap(n),
        "implied_smallest_count": implied_smallest_count(n, d1_cap(n), sequences),
    }

    if n in (14, 17):
        branch = _counting_branch("counting", n, d1_cap(n), tables)
        report.branches[branch.name] = branch
        report.bounds["counting_minimum"] = branch.lhs
    else:
        improved = improved_d1_cap(n)
        branch = _counting_branch("distinct_primaries", n, improved, tables)
        report.branches[branch.name] = branch
        report.branches["same_primary"] = same_primary_branch(n, tables)
        report.bounds["improved_d1_cap"] = improved
        report.bounds["counting_minimum"] = branch.lhs
        report.bounds["implied_smallest_count_improved"] = implied_smallest_count(
            n, improved, sequences
        )

    logger.info("small case n=%d: %s", n, report.verdict)
    return report
