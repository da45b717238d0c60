"""Exact evaluation of F(A, B, C), the minimum cross product of capped compositions.

F(A, B, C) is the infimum of sum_{i != j} a_i b_j over pairs of compositions
a, b of A and B (same length, nonnegative entries) with a_i + b_i <= C for every
block i. The minimizer has length ceil((A + B) / C): every block but the last is
full with a common difference a_i - b_i, and the last block takes the remainder.

Path: src/python/src/tripartite_verify/fmin.py
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
import logging
from math import ceil, floor
import random

from .core.error import InfeasibleGridError, InvalidQueryError

logger = logging.getLogger(__name__)

Rational = Fraction | int


@dataclass(frozen=True)
class FQuery:
    """Arguments (A, B, C) of F, stored as exact fractions."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self) -> None:
        """Coerce to Fraction and reject a nonpositive block capacity."""
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.c <= 0:
            raise InvalidQueryError(f"block capacity C must be positive, got {self.c}")

    @classmethod
    def of(cls, a: Rational, b: Rational, c: Rational) -> "FQuery":
        """Build a query from ints or fractions."""
        return cls(Fraction(a), Fraction(b), Fraction(c))


@dataclass(frozen=True)
class MinimizerWitness:
    """The explicit minimizing composition pair."""

    length: int
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    d: Fraction
    d_last: Fraction

    def cross_sum(self) -> Fraction:
        """Return sum_{i != j} a_i b_j."""
        return cross_product_sum(self.a, self.b)

    def is_feasible(self, q: FQuery) -> bool:
        """Check row sums, nonnegativity and block capacities exactly."""
        return (
            len(self.a) == len(self.b) == self.length
            and sum(self.a) == q.a
            and sum(self.b) == q.b
            and all(x >= 0 for x in self.a + self.b)
            and all(x + y <= q.c for x, y in zip(self.a, self.b, strict=True))
        )


def cross_product_sum(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    """Return sum_{i != j} a_i b_j = (sum a)(sum b) - sum a_i b_i."""
    return sum(a, Fraction(0)) * sum(b, Fraction(0)) - sum(
        (x * y for x, y in zip(a, b, strict=True)), Fraction(0)
    )


def minimizer_witness(q: FQuery) -> MinimizerWitness | None:
    """Construct the minimizer, or None when A <= 0 or B <= 0 (then F = 0)."""
    if q.a <= 0 or q.b <= 0:
        return None
    total = q.a + q.b
    length = ceil(total / q.c)
    last = total - (length - 1) * q.c
    diff = q.a - q.b

    # Ties take the balanced branch; both branches agree there.
    if abs(diff) / length <= last:
        d = d_last = diff / length
    else:
        d_last = last if diff > 0 else -last
        d = (diff - d_last) / (length - 1)

    full_a = (q.c + d) / 2
    full_b = (q.c - d) / 2
    a = (full_a,) * (length - 1) + ((last + d_last) / 2,)
    b = (full_b,) * (length - 1) + ((last - d_last) / 2,)
    return MinimizerWitness(length=length, a=a, b=b, d=d, d_last=d_last)


def f_value(q: FQuery) -> Fraction:
    """Return F(A, B, C) exactly; 0 when A or B is nonpositive."""
    witness = minimizer_witness(q)
    if witness is None:
        return Fraction(0)
    return witness.cross_sum()


def f(a: Rational, b: Rational, c: Rational) -> Fraction:
    """Shorthand for ``f_value(FQuery.of(a, b, c))``."""
    return f_value(FQuery.of(a, b, c))


# ---------------------------------------------------------------------------
# Grid oracle
# ---------------------------------------------------------------------------


def f_grid_oracle(q: FQuery, resolution: int) -> Fraction:
    """Minimize the cross product over grid compositions of two lengths.

    Entries are a_i = alpha_i * A / R and b_i = beta_i * B / R with integer
    alpha_i, beta_i summing to R = resolution, so row sums are exact. Lengths
    ceil((A+B)/C) and one more are searched. The result is never below F, and
    it is at most F + 2AB/R whenever R >= ceil((A+B)/C) * (A+B)/C.

    Raises:
        InvalidQueryError: If A or B is nonpositive, or resolution < 1.
        InfeasibleGridError: If no grid composition fits the block capacity.
    """
    if q.a <= 0 or q.b <= 0:
        raise InvalidQueryError("grid oracle needs A > 0 and B > 0")
    if resolution < 1:
        raise InvalidQueryError(f"resolution must be positive, got {resolution}")

    big_a, big_b = q.a, q.b
    room = q.c * resolution

    @cache
    def best(blocks: int, ra: int, rb: int) -> int | None:
        # Largest sum alpha_i * beta_i over `blocks` capped blocks, None if infeasible.
        if blocks == 1:
            return ra * rb if ra * big_a + rb * big_b <= room else None
        result: int | None = None
        for alpha in range(ra + 1):
            left = room - alpha * big_a
            if left < 0:
                break
            beta_hi = min(rb, floor(left / big_b))
            if blocks == 2:
                # Linear in beta once alpha is fixed, so the interval ends suffice.
                rest_room = room - (ra - alpha) * big_a
                if rest_room < 0:
                    continue
                beta_lo = max(0, ceil(rb - rest_room / big_b))
                candidates: Sequence[int] = (beta_lo, beta_hi) if beta_lo <= beta_hi else ()
            else:
                candidates = range(beta_hi + 1)
            for beta in candidates:
                rest = best(blocks - 1, ra - alpha, rb - beta)
                if rest is not None and (result is None or alpha * beta + rest > result):
                    result = alpha * beta + rest
        return result

    base = ceil((q.a + q.b) / q.c)
    values = [
        big_a * big_b - big_a * big_b * Fraction(found, resolution * resolution)
        for length in (base, base + 1)
        if (found := best(length, resolution, resolution)) is not None
    ]
    if not values:
        raise InfeasibleGridError(resolution)
    return min(values)


# ---------------------------------------------------------------------------
# Seeded property suite
# ---------------------------------------------------------------------------


def _random_rational(rng: random.Random, top: int = 12, den: int = 4) -> Fraction:
    return Fraction(rng.randint(1, top), rng.randint(1, den))


def _pairwise_cross_sum(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum(
        (a[i] * b[j] for i in range(len(a)) for j in range(len(b)) if i != j), Fraction(0)
    )


def random_query(rng: random.Random) -> FQuery:
    """Draw a positive triple with at most three blocks in the minimizer."""
    a = _random_rational(rng)
    b = _random_rational(rng)
    c = (a + b) * Fraction(rng.randint(1, 6), 3)
    return FQuery(a, b, c)


@dataclass
class FCheckReport:
    """Violation counts per checked property of F."""

    trials: int
    resolution: int
    violations: dict[str, int] = field(default_factory=dict)
    examples: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """Return True if every property held on every sample."""
        return not any(self.violations.values())

    def check(self, name: str, holds: bool, q: FQuery) -> None:
        """Count one sample of a property, remembering the first failure."""
        self.violations.setdefault(name, 0)
        if not holds:
            self.violations[name] += 1
            self.examples.setdefault(name, f"A={q.a}, B={q.b}, C={q.c}")


def run_fcheck(trials: int, resolution: int, seed: int) -> FCheckReport:
    """Check the F properties and the grid sandwich on seeded random triples."""
    rng = random.Random(seed)
    report = FCheckReport(trials=trials, resolution=resolution)
    for _ in range(trials):
        q = random_query(rng)
        value = f_value(q)
        witness = minimizer_witness(q)
        eps = _random_rational(rng, top=4, den=8)
        lam = _random_rational(rng, top=5, den=3)
        b_prime = q.b * Fraction(rng.randint(1, 8), 8)

        report.check(
            "witness",
            witness is not None
            and witness.is_feasible(q)
            and _pairwise_cross_sum(witness.a, witness.b) == value,
            q,
        )
        report.check("symmetry", value == f(q.b, q.a, q.c), q)
        report.check(
            "monotonicity",
            f(q.a + eps, q.b, q.c) >= value
            and f(q.a, q.b + eps, q.c) >= value
            and f(q.a, q.b, q.c + eps) <= value,
            q,
        )
        report.check("scaling", f(lam * q.a, lam * q.b, lam * q.c) == lam * lam * value, q)
        report.check("ratio", (b_prime / q.b) * value >= f(q.a, b_prime, q.c), q)
        report.check("positivity", (value > 0) == (q.a + q.b > q.c), q)

        grid = f_grid_oracle(q, resolution)
        report.check("sandwich", value <= grid <= value + q.a * q.b * 8 / resolution, q)
    logger.info("fcheck: %d trials, ok=%s", trials, report.ok)
    return report
