# src/python/tests/numbers/test_sequences.py

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st
import pytest

from tripartite_verify.core import CutoffExceededError, InvalidQueryError
from tripartite_verify.numbers import (
    NumberTables,
    balanced_parts,
    balanced_product,
    balanced_ternary_weight,
    bip,
    check_d_log_bound,
    check_sequence_identities,
    d_by_recursion,
    d_recursion_table,
    d_tilde,
    delta_max,
    g_k,
    g_k_full_max,
    is_nice,
    log2_bounds,
    t_tri,
)


@pytest.mark.parametrize("x,expected", [(-3, 0), (0, 0), (1, 0), (4, 4), (5, 6), (12, 36)])
def test_bip(x, expected):
    """bip is floor(x/2) * ceil(x/2), clamped at zero."""
    assert bip(x) == expected


@pytest.mark.parametrize(
    "n,expected",
    [(3, 1), (4, 2), (5, 4), (6, 8), (7, 13), (12, 70), (13, 88), (16, 166), (17, 200)],
)
def test_g3_values(n, expected):
    """Balanced recursion matches hand-evaluated and tabulated values."""
    assert g_k(3, n) == expected


def test_g_k_below_uniformity_is_zero():
    """Fewer than k vertices carry no edge."""
    assert g_k(5, 4) == 0
    assert g_k(3, 0) == 0


def test_g_k_rejects_bad_arguments():
    """Uniformity below 3 and negative n are precondition errors."""
    with pytest.raises(InvalidQueryError):
        g_k(2, 5)
    with pytest.raises(InvalidQueryError):
        g_k(3, -1)


@pytest.mark.parametrize("n", [3, 7, 13, 30])
def test_full_max_agrees_with_balanced_recursion(n):
    """Maximizing over every composition never beats the balanced split."""
    assert g_k_full_max(3, n) == g_k(3, n)


def test_full_max_respects_cutoff():
    """The exhaustive oracle refuses n above its cutoff."""
    with pytest.raises(CutoffExceededError):
        g_k_full_max(3, 61)
    with pytest.raises(CutoffExceededError):
        g_k_full_max(3, 11, cutoff=10)


def test_balanced_parts_are_balanced():
    """Parts differ by at most one and sum to n, largest first."""
    assert balanced_parts(3, 13) == [5, 4, 4]
    assert balanced_parts(4, 10) == [3, 3, 2, 2]
    assert balanced_product(3, 13) == 80


@pytest.mark.parametrize("n,expected", [(3, 1), (4, 2), (5, 5), (6, 8), (7, 14), (13, 91)])
def test_t_tri(n, expected):
    """Cyclic-triangle maximum for odd and even n."""
    assert t_tri(n) == expected


@pytest.mark.parametrize("n,expected", [(1, 0), (2, 0), (3, 0), (5, 1), (6, 0), (7, 1), (13, 3)])
def test_d_by_recursion_values(n, expected):
    """Recursion base cases and small hand-checked values."""
    assert d_by_recursion(n) == expected


@given(st.integers(min_value=1, max_value=5000))
def test_d_recursion_equals_definition(n):
    """d(n) from the recursion equals T(n) - g_3(n) and is nonnegative."""
    value = d_by_recursion(n)
    assert value == t_tri(n) - g_k(3, n)
    assert value >= 0


def test_d_recursion_table_matches_memoized_recursion():
    """The bottom-up table agrees with the memoized evaluation."""
    table = d_recursion_table(500)
    assert all(table[n] == d_by_recursion(n) for n in range(1, 501))


def test_d_by_recursion_rejects_nonpositive():
    """d(n) is defined for n >= 1 only."""
    with pytest.raises(InvalidQueryError):
        d_by_recursion(0)


@pytest.mark.parametrize(
    "n,nice",
    [(1, True), (3, True), (4, True), (5, False), (8, True), (10, True), (11, False), (26, True)],
)
def test_is_nice(n, nice):
    """Nice numbers are 3^a, 3^a + 3^b and 3^a - 3^b."""
    assert is_nice(n) is nice


def test_balanced_ternary_weight():
    """5 = 9 - 3 - 1 has three nonzero balanced ternary digits."""
    assert balanced_ternary_weight(5) == 3
    assert balanced_ternary_weight(0) == 0
    assert balanced_ternary_weight(27) == 1


@given(st.integers(min_value=1, max_value=3000))
def test_d_zero_exactly_for_nice_numbers(n):
    """d(n) = 0 holds exactly on the nice numbers."""
    assert (d_by_recursion(n) == 0) == is_nice(n)


@pytest.mark.parametrize("n,expected", [(3, -8), (6, -2), (13, 16), (17, 24)])
def test_d_tilde(n, expected):
    """Rescaled slack, negative for some small n."""
    assert d_tilde(n) == expected


@pytest.mark.parametrize("n,expected", [(3, None), (6, None), (13, 4), (17, 4)])
def test_delta_max(n, expected):
    """Largest Delta with Delta^2 <= d_tilde(n), absent when d_tilde < 0."""
    assert delta_max(n) == expected


@given(st.integers(min_value=3, max_value=2000))
def test_d_tilde_closed_form(n):
    """d_tilde(n) is 8(d(n) - 1), plus n when n is even."""
    assert d_tilde(n) == (n % 2 == 0) * n + 8 * (d_by_recursion(n) - 1)


def test_log2_bounds_bracket_powers_of_two():
    """Powers of two are bracketed tightly from below."""
    lower, upper = log2_bounds(8)
    assert lower == 3
    assert 3 < upper <= 3 + Fraction(2, 2**40)


@given(st.integers(min_value=2, max_value=10**4))
def test_log2_bounds_bracket(n):
    """2^lower <= n <= 2^upper, checked with integer powers."""
    lower, upper = log2_bounds(n, bits=8)
    assert lower <= upper
    # 2^(p/q) <= n  <=>  2^p <= n^q
    assert 2**lower.numerator <= n**lower.denominator
    assert n**upper.denominator <= 2**upper.numerator


def test_d_log_bound_on_its_range(tables):
    """d(n) <= 0.05891 n log2 n for 200 <= n < 600."""
    assert all(check_d_log_bound(n, tables.d[n]) for n in range(200, 600))


def test_sequence_identities_pass_on_reduced_ranges():
    """Every identity family holds and is reported under its name."""
    report = check_sequence_identities(
        recursion_max=3000, nice_max=3000, full_max=25, k_max=5, difference_max=60
    )
    assert report.ok
    assert set(report.checked) == {
        "d_recursion",
        "d_nonnegative",
        "d_zero_iff_nice",
        "d_tilde_closed_form",
        "full_max",
        "closed_product",
        "difference",
        "d_log_bound",
    }


@pytest.mark.slow
def test_sequence_identities_pass_on_full_ranges():
    """Default arguments: recursion to 10^6, niceness to 10^5, full maximum to 60, k up to 8."""
    report = check_sequence_identities()
    assert report.ok
    assert report.checked["d_recursion"] == 10**6
    assert report.checked["full_max"] == 58


def test_number_tables_accessors(tables):
    """Tables agree with the direct functions and expose the per-vertex quota."""
    assert tables.max_n >= 699
    assert tables.g[13] == 88
    assert tables.d[13] == 3
    assert tables.d_tilde[13] == 16
    assert tables.quota(13) == 19
    assert tables.quota(16) == 30
    assert tables.delta_max(13) == 4
    assert tables.delta_max(6) is None


def test_number_tables_rows():
    """rows returns (n, value) pairs and rejects unknown names."""
    small = NumberTables.build(20)
    assert small.rows("g3", start=12)[:2] == [(12, 70), (13, 88)]
    assert small.rows("deltamax", start=3)[0] == (3, None)
    with pytest.raises(InvalidQueryError):
        small.rows("nope")


def test_number_tables_for_other_uniformity():
    """k != 3 tables carry g only."""
    four = NumberTables.build(30, k=4)
    assert four.g[13] == g_k(4, 13)
    assert four.d == ()
    with pytest.raises(InvalidQueryError):
        NumberTables.build(10, k=2)
