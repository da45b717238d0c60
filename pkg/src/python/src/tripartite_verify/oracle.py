"""Explicit tripartite colorings used as ground truth.

A coloring assigns a color to every edge of K_n and, for every color, a label
in {0, 1, 2} to every vertex; edges of color c join vertices with different
c-labels. This module builds the blowup coloring, counts monochromatic and
precyclic triangles, orients colorings into tournaments, draws seeded random
colorings, runs an exhaustive search at tiny n, and checks the degree and
imbalance lemmas on random samples.

Path: src/python/src/tripartite_verify/oracle.py
"""

from collections import Counter
from collections.abc import Iterable, Mapping
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
import itertools
import logging
from math import comb
import multiprocessing
from multiprocessing.sharedctypes import Synchronized
import random

from .core.config import default_config
from .core.error import (
    CutoffExceededError,
    InvalidColoringError,
    InvalidQueryError,
    RetryLimitError,
)
from .numbers import balanced_parts, t_tri
from .smallcases import DegreeSequence

logger = logging.getLogger(__name__)

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


# ---------------------------------------------------------------------------
# Colorings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Coloring:
    """An edge coloring of K_n with one tripartition label vector per color."""

    n: int
    edge_color: Mapping[Edge, int]
    labels: Mapping[int, tuple[int, ...]]

    def color(self, u: int, v: int) -> int:
        """Return the color of edge uv."""
        return self.edge_color[_edge(u, v)]

    def colors(self) -> list[int]:
        """Return the used color ids in increasing order."""
        return sorted(set(self.edge_color.values()))

    def label(self, c: int, v: int) -> int:
        """Return the c-label of v."""
        return self.labels[c][v]

    def validate(self) -> None:
        """Check completeness, label ranges and that every color class is tripartite.

        Raises:
            InvalidColoringError: On the first violated condition.
        """
        expected = set(itertools.combinations(range(self.n), 2))
        if set(self.edge_color) != expected:
            raise InvalidColoringError(f"edges do not cover K_{self.n} exactly once")
        for c in self.colors():
            row = self.labels.get(c)
            if row is None or len(row) != self.n:
                raise InvalidColoringError(f"color {c} lacks labels on all {self.n} vertices")
            if any(x not in (0, 1, 2) for x in row):
                raise InvalidColoringError(f"color {c} has a label outside {{0, 1, 2}}")
        for (u, v), c in self.edge_color.items():
            if self.labels[c][u] == self.labels[c][v]:
                raise InvalidColoringError(f"edge ({u},{v}) of color {c} joins equal labels")

    def neighborhood(self, v: int, c: int) -> list[int]:
        """Return N_c(v)."""
        return [w for w in range(self.n) if w != v and self.color(v, w) == c]

    def split_neighborhood(self, v: int, c: int) -> tuple[list[int], list[int]]:
        """Return (N_{c,1}(v), N_{c,2}(v)): neighbors whose c-label is c(v)+1 or c(v)+2 mod 3."""
        row = self.labels[c]
        first, second = [], []
        for w in self.neighborhood(v, c):
            (first if row[w] == (row[v] + 1) % 3 else second).append(w)
        return first, second


def blowup_coloring(n: int) -> Coloring:
    """Build the balanced iterated blowup of an edge, one fresh color per recursion node."""
    if n < 1:
        raise InvalidQueryError(f"blowup needs n >= 1, got {n}")
    edge_color: dict[Edge, int] = {}
    labels: dict[int, tuple[int, ...]] = {}
    pending = [list(range(n))]
    while pending:
        vertices = pending.pop(0)
        if len(vertices) < 2:
            continue
        c = len(labels)
        row = [0] * n
        parts: list[list[int]] = []
        start = 0
        for j, size in enumerate(balanced_parts(3, len(vertices))):
            part = vertices[start : start + size]
            start += size
            for v in part:
                row[v] = j
            parts.append(part)
        labels[c] = tuple(row)
        for a, b in itertools.combinations(parts, 2):
            for u in a:
                for v in b:
                    edge_color[_edge(u, v)] = c
        pending.extend(parts)
    return Coloring(n, edge_color, labels)


def coloring_from_edges(n: int, edge_color: Mapping[Edge, int]) -> Coloring:
    """Attach labels to a coloring whose color classes are 3-colorable.

    Raises:
        InvalidColoringError: If some color class is not 3-colorable.
    """
    by_color: dict[int, list[Edge]] = {}
    for edge, c in edge_color.items():
        by_color.setdefault(c, []).append(edge)
    labels = {}
    for c, edges in by_color.items():
        found = three_coloring(n, edges)
        if found is None:
            raise InvalidColoringError(f"color {c} is not tripartite")
        labels[c] = found
    coloring = Coloring(n, dict(edge_color), labels)
    coloring.validate()
    return coloring


def three_coloring(n: int, edges: Iterable[Edge]) -> tuple[int, ...] | None:
    """Return a proper 3-labeling of the graph, or None."""
    adjacency: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    labels = [-1] * n

    def assign(v: int) -> bool:
        if v == n:
            return True
        used = {labels[w] for w in adjacency[v] if labels[w] >= 0}
        for x in range(3):
            if x not in used:
                labels[v] = x
                if assign(v + 1):
                    return True
        labels[v] = -1
        return False

    return tuple(labels) if assign(0) else None


# ---------------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------------


def primary_order(coloring: Coloring, v: int, reverse_ties: bool = False) -> list[tuple[int, int]]:
    """Return (color, degree) at v, most common first; ties go to the lowest id unless reversed."""
    counts = Counter(coloring.color(v, w) for w in range(coloring.n) if w != v)
    sign = -1 if reverse_ties else 1
    return sorted(counts.items(), key=lambda item: (-item[1], sign * item[0]))


def primary_colors(coloring: Coloring, reverse_ties: bool = False) -> list[int]:
    """Return c_1(v) for every vertex."""
    return [primary_order(coloring, v, reverse_ties)[0][0] for v in range(coloring.n)]


def degree_sequence(coloring: Coloring, v: int, reverse_ties: bool = False) -> DegreeSequence:
    """Return (d^1(v), d^2(v), ...)."""
    return DegreeSequence(tuple(count for _, count in primary_order(coloring, v, reverse_ties)))


def non_color_edges(coloring: Coloring, c: int, u: int, vertices: Iterable[int]) -> int:
    """Return b_S^(c)(u), the number of edges from u into S not of color c."""
    return sum(1 for w in vertices if w != u and coloring.color(u, w) != c)


@dataclass(frozen=True)
class ColoringStats:
    """Triangle counts, imbalances and degree sequences of one coloring."""

    e3: int
    pc2: int
    pc3: int
    delta: dict[tuple[int, int], int]
    degseq: dict[int, DegreeSequence]

    @property
    def max_delta(self) -> int:
        """Return max over (c, v) of delta_c(v)."""
        return max(self.delta.values(), default=0)


def count_stats(coloring: Coloring) -> ColoringStats:
    """Classify every triangle and compute delta_c(v) and degree sequences."""
    e3 = pc2 = pc3 = 0
    for x, y, z in itertools.combinations(range(coloring.n), 3):
        a, b, c = coloring.color(x, y), coloring.color(x, z), coloring.color(y, z)
        if a == b == c:
            e3 += 1
        elif a != b and b != c and a != c:
            pc3 += 1
        else:
            # The two same-colored edges meet at the apex; compare the far endpoints.
            if a == b:
                shared, far = a, (y, z)
            elif a == c:
                shared, far = a, (x, z)
            else:
                shared, far = b, (x, y)
            if coloring.label(shared, far[0]) != coloring.label(shared, far[1]):
                pc2 += 1

    delta = {}
    for c in coloring.colors():
        for v in range(coloring.n):
            first, second = coloring.split_neighborhood(v, c)
            delta[(c, v)] = abs(len(first) - len(second))
    degseq = {v: degree_sequence(coloring, v) for v in range(coloring.n)}
    return ColoringStats(e3=e3, pc2=pc2, pc3=pc3, delta=delta, degseq=degseq)


def max_color_neighborhood(coloring: Coloring) -> tuple[int, int, int, int]:
    """Return (v*, c*, |X|, |Y|) maximizing |N_c(v)|, lowest (v, c) on ties."""
    best: tuple[int, int, int, int] | None = None
    for v in range(coloring.n):
        for c in coloring.colors():
            first, second = coloring.split_neighborhood(v, c)
            if best is None or len(first) + len(second) > best[2] + best[3]:
                best = (v, c, len(first), len(second))
    if best is None:
        raise InvalidColoringError("coloring has no edges")
    return best


# ---------------------------------------------------------------------------
# Tournaments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Tournament:
    """Orientation of K_n; ``beats[(u, v)]`` with u < v is True when u -> v."""

    n: int
    beats: Mapping[Edge, bool]

    def wins(self, u: int, v: int) -> bool:
        """Return True when u -> v."""
        return self.beats[(u, v)] if u < v else not self.beats[(v, u)]

    def out_degree(self, v: int) -> int:
        """Return the number of arcs leaving v."""
        return sum(1 for w in range(self.n) if w != v and self.wins(v, w))

    def in_degree(self, v: int) -> int:
        """Return the number of arcs entering v."""
        return self.n - 1 - self.out_degree(v)

    def cyclic_triangles(self) -> int:
        """Count directed 3-cycles."""
        return sum(
            1
            for a, b, c in itertools.combinations(range(self.n), 3)
            if self.wins(a, b) == self.wins(b, c) == self.wins(c, a)
        )


def orient(coloring: Coloring, y: Mapping[int, int]) -> Tournament:
    """Direct u -> v when c(u) = c(v) + y(c) mod 3, with c the color of uv."""
    beats = {}
    for (u, v), c in coloring.edge_color.items():
        if y[c] not in (1, 2):
            raise InvalidQueryError(f"orientation shift for color {c} must be 1 or 2")
        beats[(u, v)] = coloring.label(c, u) == (coloring.label(c, v) + y[c]) % 3
    return Tournament(coloring.n, beats)


def random_tournament(n: int, rng: random.Random) -> Tournament:
    """Orient every pair uniformly at random."""
    return Tournament(n, {edge: rng.random() < 0.5 for edge in itertools.combinations(range(n), 2)})


def tournament_degree_identity(tournament: Tournament) -> bool:
    """Check 2(C(n,3) - cyclic) = sum_v C(out_v, 2) + C(in_v, 2)."""
    n = tournament.n
    vees = sum(
        comb(tournament.out_degree(v), 2) + comb(tournament.in_degree(v), 2) for v in range(n)
    )
    return 2 * (comb(n, 3) - tournament.cyclic_triangles()) == vees


# ---------------------------------------------------------------------------
# Random colorings
# ---------------------------------------------------------------------------


def random_tripartite_coloring(
    n: int, palette_size: int, seed: int, retry_cap: int | None = None
) -> Coloring:
    """Draw random labelings per color, then a random compatible color per edge.

    All labelings are redrawn when some edge has no compatible color.

    Raises:
        InvalidQueryError: If n < 3 or palette_size < 1.
        RetryLimitError: After ``retry_cap`` redraws.
    """
    if n < 3 or palette_size < 1:
        raise InvalidQueryError(f"need n >= 3 and palette_size >= 1, got {n}, {palette_size}")
    cap = default_config().coloring_retry_cap if retry_cap is None else retry_cap
    rng = random.Random(seed)
    for _ in range(cap):
        labels = {
            c: tuple(rng.randrange(3) for _ in range(n)) for c in range(palette_size)
        }
        edge_color: dict[Edge, int] = {}
        for u, v in itertools.combinations(range(n), 2):
            options = [c for c in range(palette_size) if labels[c][u] != labels[c][v]]
            if not options:
                break
            edge_color[(u, v)] = rng.choice(options)
        else:
            used = set(edge_color.values())
            return Coloring(n, edge_color, {c: row for c, row in labels.items() if c in used})
    raise RetryLimitError(cap, f"no proper coloring with n={n}, palette={palette_size}")


# ---------------------------------------------------------------------------
# Exhaustive search
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _class_is_tripartite(n: int, mask: int) -> bool:
    edges = [pair for i, pair in enumerate(itertools.combinations(range(n), 2)) if mask >> i & 1]
    return three_coloring(n, edges) is not None


def _colex_edges(n: int) -> list[Edge]:
    return sorted(itertools.combinations(range(n), 2), key=lambda e: (e[1], e[0]))


class _ColoringSearch:
    """Branch and bound over edge colorings of K_n in colex edge order.

    Colors are canonical: an edge takes an existing color or the next fresh
    one. ``shared`` is an optional cross-process best-so-far, read only to
    prune.
    """

    def __init__(self, n: int, best: int, shared: Synchronized | None = None) -> None:
        self.n = n
        self.edges = _colex_edges(n)
        index = {edge: i for i, edge in enumerate(self.edges)}
        # Bit positions follow lexicographic order in _class_is_tripartite.
        lex = {edge: i for i, edge in enumerate(itertools.combinations(range(n), 2))}
        self.bits = [1 << lex[edge] for edge in self.edges]
        self.triangles = [
            (index[(a, b)], index[(a, c)], index[(b, c)])
            for a, b, c in itertools.combinations(range(n), 3)
        ]
        self.closing: dict[int, list[tuple[int, int, int]]] = {}
        for tri in self.triangles:
            self.closing.setdefault(max(tri), []).append(tri)
        self.ceiling = t_tri(n)
        self.best = best
        self.shared = shared
        self.colors = [-1] * len(self.edges)
        self.masks: list[int] = []

    def _sync(self) -> int:
        if self.shared is not None:
            self.best = max(self.best, self.shared.value)
        return self.best

    def _improve(self, value: int) -> None:
        self.best = max(self.best, value)
        if self.shared is not None:
            with self.shared.get_lock():
                if value > self.shared.value:
                    self.shared.value = value

    def _open_bound(self, position: int) -> int:
        alive = 0
        for tri in self.triangles:
            if max(tri) < position:
                continue
            seen = {self.colors[i] for i in tri if i < position}
            if len(seen) <= 1:
                alive += 1
        return alive

    def _push(self, position: int, c: int) -> tuple[int, int] | None:
        bit = self.bits[position]
        fresh = c == len(self.masks)
        mask = bit if fresh else self.masks[c] | bit
        if not _class_is_tripartite(self.n, mask):
            return None
        if fresh:
            self.masks.append(mask)
        else:
            self.masks[c] = mask
        self.colors[position] = c
        gained = lost = 0
        for tri in self.closing.get(position, ()):
            found = {self.colors[i] for i in tri}
            gained += len(found) == 1
            lost += len(found) == 3
        return gained, lost

    def _pop(self, position: int, c: int, fresh: bool) -> None:
        self.colors[position] = -1
        if fresh:
            self.masks.pop()
        else:
            self.masks[c] ^= self.bits[position]

    def search(self, position: int, e3: int, rainbow: int) -> None:
        """Explore every completion of the colors fixed before ``position``."""
        if self._sync() >= self.ceiling:
            return
        if position == len(self.edges):
            self._improve(e3)
            return
        bound = min(e3 + self._open_bound(position), self.ceiling - (rainbow + 3) // 4)
        if bound <= self.best:
            return
        for c in range(len(self.masks) + 1):
            fresh = c == len(self.masks)
            step = self._push(position, c)
            if step is None:
                continue
            self.search(position + 1, e3 + step[0], rainbow + step[1])
            self._pop(position, c, fresh)

    def prefixes(self, depth: int) -> list[tuple[int, ...]]:
        """Return the canonical valid color assignments of the first ``depth`` edges."""
        found: list[tuple[int, ...]] = []

        def walk(position: int, prefix: list[int]) -> None:
            if position == depth:
                found.append(tuple(prefix))
                return
            for c in range(len(self.masks) + 1):
                fresh = c == len(self.masks)
                if self._push(position, c) is None:
                    continue
                prefix.append(c)
                walk(position + 1, prefix)
                prefix.pop()
                self._pop(position, c, fresh)

        walk(0, [])
        return found

    def run_prefix(self, prefix: tuple[int, ...]) -> int:
        """Search the subtree below one prefix and return the best value seen."""
        e3 = rainbow = 0
        for position, c in enumerate(prefix):
            step = self._push(position, c)
            if step is None:
                raise InvalidColoringError(f"prefix {prefix} is not tripartite at edge {position}")
            e3 += step[0]
            rainbow += step[1]
        self.search(len(prefix), e3, rainbow)
        return self.best


_shared_best: Synchronized | None = None


def _init_branch_worker(shared: Synchronized) -> None:
    global _shared_best
    _shared_best = shared


def _search_branch(n: int, seed: int, prefix: tuple[int, ...]) -> int:
    return _ColoringSearch(n, seed, _shared_best).run_prefix(prefix)


def brute_force_max(
    n: int,
    cutoff: int | None = None,
    seed_with_blowup: bool = True,
    jobs: int = 1,
    branch_depth: int = 3,
) -> int:
    """Return the maximum number of monochromatic triangles over tripartite colorings of K_n.

    Edges are colored in colex order with existing colors or one fresh color
    (first uses in increasing order). A branch is cut when even all still-open
    triangles turning monochromatic, or the tournament bound T(n) - pc_3/4 on
    finished rainbow triangles, cannot beat the best value found. The search
    stops as soon as T(n) is reached.

    The starting best is the triangle count of the explicit blowup coloring
    (or 0), never a value read from the g_3 recursion. With ``jobs > 1`` the
    colorings of the first ``branch_depth`` edges are split across worker
    processes that share one best-so-far.

    Raises:
        InvalidQueryError: If n < 3 or jobs < 1.
        CutoffExceededError: If n exceeds the cutoff.
    """
    cutoff = default_config().brute_force_cutoff if cutoff is None else cutoff
    if n < 3:
        raise InvalidQueryError(f"brute force needs n >= 3, got {n}")
    if jobs < 1:
        raise InvalidQueryError(f"jobs must be >= 1, got {jobs}")
    if n > cutoff:
        raise CutoffExceededError("brute_force_max", n, cutoff)

    seed = count_stats(blowup_coloring(n)).e3 if seed_with_blowup else 0
    root = _ColoringSearch(n, seed)
    if jobs == 1:
        root.search(0, 0, 0)
        best = root.best
    else:
        branches = root.prefixes(min(branch_depth, len(root.edges)))
        shared = multiprocessing.Value("q", seed)
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=_init_branch_worker, initargs=(shared,)
        ) as pool:
            found = list(
                pool.map(_search_branch, itertools.repeat(n), itertools.repeat(seed), branches)
            )
        best = max([seed, shared.value, *found])
        logger.debug("brute force n=%d: %d branches on %d workers", n, len(branches), jobs)
    logger.info("brute force n=%d: %d", n, best)
    return best


# ---------------------------------------------------------------------------
# Property suite
# ---------------------------------------------------------------------------


@dataclass
class PropertyReport:
    """Violation counts per lemma checked on random colorings and tournaments."""

    trials: int
    seed: int
    checked: int = 0
    skipped: int = 0
    violations: dict[str, int] = field(default_factory=dict)
    examples: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """Return True if no property failed."""
        return not any(self.violations.values())

    def check(self, name: str, holds: bool, context: str) -> None:
        """Count one sample of a property, remembering the first failure."""
        self.violations.setdefault(name, 0)
        if not holds:
            self.violations[name] += 1
            self.examples.setdefault(name, context)


def check_coloring(coloring: Coloring, rng: random.Random, report: PropertyReport) -> None:
    """Run every per-coloring property on one coloring."""
    n = coloring.n
    stats = count_stats(coloring)
    context = f"n={n} colors={len(coloring.colors())}"
    ceiling = t_tri(n)
    n_sq = n * n

    report.check("triangle_total", stats.e3 + stats.pc2 + stats.pc3 <= comb(n, 3), context)
    report.check("basic_facts_a", 2 * stats.pc2 + stats.pc3 <= 4 * (ceiling - stats.e3), context)
    imbalance = sum(value * value for value in stats.delta.values())
    report.check(
        "basic_facts_b",
        imbalance + 4 * stats.pc2 + 2 * stats.pc3
        <= n * (n + 1) * (n - 1) // 3 - 8 * stats.e3,
        context,
    )

    sequences = [stats.degseq[v] for v in range(n)]
    report.check("d1_bound", 3 * sum(seq.d1 for seq in sequences) <= 2 * n_sq, context)
    if len(set(primary_colors(coloring))) > 1:
        report.check(
            "d1_improved_bound",
            3 * sum(seq.d1 for seq in sequences) <= 2 * n_sq - (n - 1),
            context,
        )
    for t in (1, 2, 3):
        top = sum(sum(seq.entries[:t]) for seq in sequences)
        report.check(f"top_{t}_bound", 3**t * top <= (3**t - 1) * n_sq, context)

    reversed_sequences = [degree_sequence(coloring, v, reverse_ties=True) for v in range(n)]
    report.check("tie_independence", reversed_sequences == sequences, context)

    y = {c: rng.choice((1, 2)) for c in coloring.colors()}
    tournament = orient(coloring, y)
    mono_cyclic = all(
        tournament.wins(a, b) == tournament.wins(b, c) == tournament.wins(c, a)
        for a, b, c in itertools.combinations(range(n), 3)
        if coloring.color(a, b) == coloring.color(a, c) == coloring.color(b, c)
    )
    report.check("monochromatic_cyclic", mono_cyclic, context)
    report.check("cyclic_at_most_t", tournament.cyclic_triangles() <= ceiling, context)

    _, _, size_x, size_y = max_color_neighborhood(coloring)
    largest_part = max(
        len(part)
        for v in range(n)
        for c in coloring.colors()
        for part in coloring.split_neighborhood(v, c)
    )
    report.check(
        "first_step", 2 * largest_part <= size_x + size_y + stats.max_delta, context
    )


def run_property_suite(
    trials: int, seed: int, tournaments: int | None = None, palette_range: tuple[int, int] = (1, 5)
) -> PropertyReport:
    """Check the lemmas on ``trials`` random colorings and on random tournaments.

    Colorings draw n from [4, 12] and the palette from ``palette_range``. A
    draw whose generator gives up is counted as skipped and redrawn, so
    ``checked`` ends equal to ``trials``.

    Raises:
        RetryLimitError: If more than ``max(trials, coloring_retry_cap)`` draws are skipped.
    """
    skip_cap = max(trials, default_config().coloring_retry_cap)
    rng = random.Random(seed)
    report = PropertyReport(trials=trials, seed=seed)
    while report.checked < trials:
        n = rng.randint(4, 12)
        palette = rng.randint(*palette_range)
        try:
            coloring = random_tripartite_coloring(n, palette, rng.randrange(2**32))
        except RetryLimitError:
            report.skipped += 1
            if report.skipped > skip_cap:
                raise RetryLimitError(
                    report.skipped, f"property suite palette range {palette_range}"
                ) from None
            continue
        check_coloring(coloring, rng, report)
        report.checked += 1

    for _ in range(trials // 5 if tournaments is None else tournaments):
        tournament = random_tournament(rng.randint(3, 12), rng)
        report.check("tournament_identity", tournament_degree_identity(tournament), "tournament")
    logger.info(
        "props: %d colorings checked, %d draws skipped, ok=%s",
        report.checked,
        report.skipped,
        report.ok,
    )
    return report
