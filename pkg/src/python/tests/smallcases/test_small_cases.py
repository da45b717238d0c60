# src/python/tests/smallcases/test_small_cases.py

import pytest

from tripartite_verify.core import InvalidQueryError, UnsupportedRangeError
from tripartite_verify.smallcases import (
    CaseVerdict,
    DegreeSequence,
    counting_contradiction,
    counting_minimum_brute,
    d1_cap,
    feasible_degree_sequences,
    implied_smallest_count,
    improved_d1_cap,
    same_primary_branch,
    top_two_cap,
    verify_small_case,
)


def _names(n):
    return [str(seq) for seq in feasible_degree_sequences(n)]


def test_degree_sequence_accessors():
    """d1, d2 and the rendered form."""
    seq = DegreeSequence((9, 2, 1))
    assert (seq.d1, seq.d2, seq.top_two) == (9, 2, 11)
    assert str(seq) == "(9,2,1)"
    assert DegreeSequence((12,)).d2 == 0
    assert str(DegreeSequence((12,))) == "(12)"


@pytest.mark.parametrize(
    "n,expected",
    [
        (13, ["(8,4)", "(9,3)", "(9,2,1)", "(10,2)", "(11,1)", "(12)"]),
        (14, ["(9,4)", "(10,3)", "(10,2,1)", "(11,2)", "(12,1)", "(13)"]),
        (
            17,
            [
                "(11,5)",
                "(12,4)",
                "(12,3,1)",
                "(12,2,2)",
                "(13,3)",
                "(13,2,1)",
                "(14,2)",
                "(15,1)",
                "(16)",
            ],
        ),
    ],
)
def test_feasible_sequences(n, expected):
    """Published sequence lists, in the same order."""
    assert _names(n) == expected


def test_feasible_sequences_reject_out_of_range():
    """Enumeration is limited to 4 <= n <= 30."""
    with pytest.raises(InvalidQueryError):
        feasible_degree_sequences(3)
    with pytest.raises(InvalidQueryError):
        feasible_degree_sequences(31)


@pytest.mark.parametrize(
    "n,cap,top_two,improved",
    [(13, 112, 150, 108), (14, 130, 174, None), (16, 170, 227, 165), (17, 192, 256, None)],
)
def test_global_caps(n, cap, top_two, improved):
    """floor(2n^2/3), floor(8n^2/9) and the improved cap."""
    assert d1_cap(n) == cap
    assert top_two_cap(n) == top_two
    if improved is not None:
        assert improved_d1_cap(n) == improved


@pytest.mark.parametrize(
    "n,cap,expected",
    [
        (13, 108, 152),
        (13, 112, 148),
        (14, 130, 178),
        (16, 165, 230),
        (16, 170, 220),
        (17, 192, 262),
    ],
)
def test_counting_minimum(n, cap, expected):
    """Knapsack minimum of sum d1 + d2 under the d1 budget."""
    assert counting_contradiction(n, cap) == expected


@pytest.mark.parametrize("n,cap", [(13, 108), (13, 112), (14, 130)])
def test_counting_minimum_agrees_with_enumeration(n, cap):
    """Enumerating every multiset gives the same minimum."""
    assert counting_minimum_brute(n, cap) == counting_contradiction(n, cap)


def test_counting_minimum_with_impossible_budget():
    """No multiset fits a budget below n times the smallest d1."""
    assert counting_contradiction(13, 50) is None
    assert counting_contradiction(13, -1) is None


@pytest.mark.parametrize(
    "n,cap,expected",
    [(13, 112, 5), (13, 108, 9), (14, 130, 10), (16, 170, 6), (16, 165, 11), (17, 192, 12)],
)
def test_implied_smallest_count(n, cap, expected):
    """Vertices forced onto the smallest d1 by the budget."""
    assert implied_smallest_count(n, cap, feasible_degree_sequences(n)) == expected


def test_same_primary_thirteen():
    """Both tripartitions close; the balanced-pair one by counting as well."""
    branch = same_primary_branch(13)
    assert branch.ok
    parts = {result.parts: result for result in branch.tripartitions}
    assert set(parts) == {(5, 5, 3), (5, 4, 4)}
    assert parts[(5, 5, 3)].closed_by == ("S2", "S3")
    assert parts[(5, 5, 3)].forced_sum == 156
    assert parts[(5, 4, 4)].closed_by == ("S2",)
    assert parts[(5, 4, 4)].clique_part == 5
    assert branch.rhs == 150


def test_same_primary_sixteen():
    """(6,6,4) reaches 236 > 227 and (6,5,5) forces a monochromatic K_6."""
    branch = same_primary_branch(16)
    assert branch.ok
    parts = {result.parts: result for result in branch.tripartitions}
    assert set(parts) == {(6, 6, 4), (6, 5, 5)}
    assert "S3" in parts[(6, 6, 4)].closed_by
    assert parts[(6, 6, 4)].forced_sum == 236
    assert "S2" in parts[(6, 5, 5)].closed_by
    assert branch.lhs == 236


def test_same_primary_only_for_thirteen_and_sixteen():
    """The branch is not defined for the counting-only cases."""
    with pytest.raises(UnsupportedRangeError):
        same_primary_branch(14)


@pytest.mark.parametrize("n", [13, 14, 16, 17])
def test_verify_small_case_establishes_contradiction(n):
    """Every delegated n ends in a contradiction."""
    report = verify_small_case(n)
    assert report.verdict is CaseVerdict.CONTRADICTION
    assert report.ok
    expected = {"counting"} if n in (14, 17) else {"distinct_primaries", "same_primary"}
    assert set(report.branches) == expected


def test_small_case_bounds_and_record():
    """The report carries the cited bounds and serializes cleanly."""
    report = verify_small_case(16)
    assert report.bounds == {
        "d1_cap": 170,
        "top_two_cap": 227,
        "implied_smallest_count": 6,
        "improved_d1_cap": 165,
        "counting_minimum": 230,
        "implied_smallest_count_improved": 11,
    }
    record = report.record()
    assert record["verdict"] == "contradiction-established"
    assert record["branches"]["same_primary"]["ok"] is True
    assert set(record) == {"n", "verdict", "feasible_sequences", "bounds", "branches"}


def test_verify_small_case_rejects_other_n():
    """Only 13, 14, 16 and 17 are handled here."""
    with pytest.raises(UnsupportedRangeError):
        verify_small_case(15)
