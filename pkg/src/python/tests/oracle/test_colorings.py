# src/python/tests/oracle/test_colorings.py

import itertools
import random

from hypothesis import given
from hypothesis import strategies as st
import pytest

from tripartite_verify import numbers, oracle
from tripartite_verify.core import (
    CutoffExceededError,
    InvalidColoringError,
    InvalidQueryError,
    RetryLimitError,
)
from tripartite_verify.numbers import g_k, t_tri
from tripartite_verify.oracle import (
    Coloring,
    blowup_coloring,
    brute_force_max,
    coloring_from_edges,
    count_stats,
    degree_sequence,
    max_color_neighborhood,
    non_color_edges,
    orient,
    primary_colors,
    random_tournament,
    random_tripartite_coloring,
    run_property_suite,
    three_coloring,
    tournament_degree_identity,
)


def _single_color(n):
    return {edge: 0 for edge in itertools.combinations(range(n), 2)}


def _cherry(far_labels):
    """Triangle with two color-0 edges at vertex 0 and a color-1 edge opposite."""
    return Coloring(
        3,
        {(0, 1): 0, (0, 2): 0, (1, 2): 1},
        {0: far_labels, 1: (0, 0, 1)},
    )


@pytest.mark.parametrize("n,expected", [(3, 1), (4, 2), (6, 8), (12, 70)])
def test_blowup_reaches_g3(n, expected):
    """The recursive construction is tripartite and has g_3(n) monochromatic triangles."""
    coloring = blowup_coloring(n)
    coloring.validate()
    assert count_stats(coloring).e3 == expected == g_k(3, n)


def test_single_color_triangle():
    """One color on K_3: one monochromatic triangle, no precyclic ones."""
    coloring = coloring_from_edges(3, _single_color(3))
    stats = count_stats(coloring)
    assert (stats.e3, stats.pc2, stats.pc3) == (1, 0, 0)
    assert orient(coloring, {0: 1}).cyclic_triangles() == 1


def test_two_precyclic_depends_on_far_labels():
    """A cherry is 2-precyclic exactly when its far endpoints carry different labels."""
    assert count_stats(_cherry((0, 1, 2))).pc2 == 1
    assert count_stats(_cherry((0, 1, 1))).pc2 == 0


def test_rainbow_triangle_is_three_precyclic():
    """Three distinct colors on a triangle."""
    coloring = coloring_from_edges(3, {(0, 1): 0, (0, 2): 1, (1, 2): 2})
    stats = count_stats(coloring)
    assert (stats.e3, stats.pc2, stats.pc3) == (0, 0, 1)


def test_non_tripartite_class_is_rejected():
    """K_4 in one color is not 3-colorable."""
    assert three_coloring(4, list(_single_color(4))) is None
    with pytest.raises(InvalidColoringError):
        coloring_from_edges(4, _single_color(4))


def test_validate_catches_equal_labels():
    """An edge between equal labels of its own color is invalid."""
    coloring = Coloring(3, _single_color(3), {0: (0, 0, 1)})
    with pytest.raises(InvalidColoringError):
        coloring.validate()


def test_blowup_orientation_keeps_monochromatic_triangles_cyclic():
    """Every monochromatic triangle becomes cyclic, so at least g_3(6) are."""
    coloring = blowup_coloring(6)
    tournament = orient(coloring, {c: 1 for c in coloring.colors()})
    assert 8 <= tournament.cyclic_triangles() <= t_tri(6)


def test_orientation_shift_must_be_one_or_two():
    """y(c) = 0 would not orient anything."""
    with pytest.raises(InvalidQueryError):
        orient(blowup_coloring(3), {0: 0})


def test_degree_helpers():
    """Primary colors, degree sequences and non-color edge counts on the blowup."""
    coloring = blowup_coloring(6)
    assert degree_sequence(coloring, 0).entries[0] == 4
    assert sum(degree_sequence(coloring, 0).entries) == 5
    assert primary_colors(coloring) == [0] * 6
    assert non_color_edges(coloring, 0, 0, range(6)) == 1
    v, c, size_x, size_y = max_color_neighborhood(coloring)
    assert (v, c) == (0, 0)
    assert size_x + size_y == 4


@given(st.integers(min_value=3, max_value=12), st.integers(min_value=0, max_value=10**6))
def test_tournament_degree_identity(n, seed):
    """2(C(n,3) - cyclic) equals the number of transitive vees."""
    assert tournament_degree_identity(random_tournament(n, random.Random(seed)))


def test_random_coloring_is_valid_and_seeded():
    """Same seed, same coloring; every draw passes validation."""
    first = random_tripartite_coloring(9, 4, seed=11)
    second = random_tripartite_coloring(9, 4, seed=11)
    first.validate()
    assert first == second
    assert count_stats(first).e3 <= g_k(3, 9)


def test_random_coloring_gives_up_on_single_color():
    """Twelve vertices cannot be properly 3-labeled by one color."""
    with pytest.raises(RetryLimitError):
        random_tripartite_coloring(12, 1, seed=0, retry_cap=50)
    with pytest.raises(InvalidQueryError):
        random_tripartite_coloring(2, 3, seed=0)


@pytest.mark.parametrize("n,expected", [(3, 1), (4, 2), (5, 4)])
def test_brute_force_without_seed(n, expected):
    """The unseeded search finds g_3(n) on its own."""
    assert brute_force_max(n, seed_with_blowup=False) == expected


def test_brute_force_six_reaches_tournament_ceiling():
    """For n = 6 the blowup already meets T(6) = 8."""
    assert brute_force_max(6) == 8


def test_brute_force_ignores_g3_recursion(monkeypatch):
    """A corrupted g_3 recursion leaves the searched maximum unchanged."""

    def _wrong_g_k(k, n):
        return 999

    monkeypatch.setattr(numbers, "g_k", _wrong_g_k)
    monkeypatch.setattr(oracle, "g_k", _wrong_g_k, raising=False)
    assert brute_force_max(5) == 4
    assert brute_force_max(6) == 8


@pytest.mark.slow
@pytest.mark.parametrize("n,seeded", [(5, False), (6, False), (6, True)])
def test_brute_force_parallel_matches_serial(n, seeded):
    """Splitting the first edges across workers gives the serial maximum."""
    serial = brute_force_max(n, seed_with_blowup=seeded)
    assert brute_force_max(n, seed_with_blowup=seeded, jobs=2) == serial


def test_brute_force_cutoff():
    """n above the cutoff is refused, as are bad worker counts."""
    with pytest.raises(CutoffExceededError):
        brute_force_max(7)
    with pytest.raises(InvalidQueryError):
        brute_force_max(2)
    with pytest.raises(InvalidQueryError):
        brute_force_max(5, jobs=0)


def test_property_suite_has_no_violations():
    """The lemma checks hold on seeded random colorings and tournaments."""
    report = run_property_suite(trials=60, seed=3, palette_range=(3, 5))
    assert report.ok, report.examples
    assert report.checked == 60
    assert report.skipped < 60
    for name in (
        "triangle_total",
        "basic_facts_a",
        "basic_facts_b",
        "d1_bound",
        "top_1_bound",
        "top_3_bound",
        "tie_independence",
        "monochromatic_cyclic",
        "cyclic_at_most_t",
        "first_step",
        "tournament_identity",
    ):
        assert name in report.violations


@pytest.mark.slow
def test_property_suite_checks_every_requested_trial():
    """Skipped draws are redrawn, so the full palette range still yields 1000 checked colorings."""
    report = run_property_suite(1000, 0)
    assert report.ok, report.examples
    assert report.checked == 1000
    assert report.skipped > 0
