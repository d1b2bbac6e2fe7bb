import itertools
import math

import pytest
from hypothesis import given, strategies as st

from acyclic_bipartite.exact import (
    StirlingTable,
    bell_number,
    factorial,
    poly_bernoulli,
    stirling2,
)

TABLE_1 = [
    [1, 1, 1, 1, 1, 1, 1],
    [1, 2, 4, 8, 16, 32, 64],
    [1, 4, 14, 46, 146, 454, 1394],
    [1, 8, 46, 230, 1066, 4718, 20266],
    [1, 16, 146, 1066, 6902, 41506, 237686],
    [1, 32, 454, 4718, 41506, 329462, 2441314],
    [1, 64, 1394, 20266, 237686, 2441314, 22934774],
]


def count_set_partitions(n, k):
    # surjections {0..n-1} -> {0..k-1}, divided by k!
    surj = sum(1 for f in itertools.product(range(k), repeat=n) if len(set(f)) == k)
    return surj // math.factorial(k) if k else int(n == 0)


def lonesum_count(n, k):
    # rows pairwise nested as sets <=> no 2x2 permutation minor
    count = 0
    for bits in range(1 << (n * k)):
        rows = [(bits >> (i * k)) & ((1 << k) - 1) for i in range(n)]
        if all(a & b in (a, b) for a, b in itertools.combinations(rows, 2)):
            count += 1
    return count


def test_stirling_examples():
    assert stirling2(4, 2) == 7
    assert stirling2(3, 0) == 0
    assert stirling2(0, 0) == 1
    assert all(stirling2(n, n) == 1 for n in range(30))


@pytest.mark.parametrize("n,k", [(n, k) for n in range(7) for k in range(n + 1)])
def test_stirling_matches_enumeration(n, k):
    assert stirling2(n, k) == count_set_partitions(n, k)


def test_stirling_out_of_range_is_zero():
    assert stirling2(3, 5) == 0
    assert stirling2(-1, 0) == 0


def test_table_invariants():
    table = StirlingTable(25)
    assert table(0, 0) == 1
    for n in range(1, 26):
        assert table(n, 0) == 0
        assert table(n, n + 1) == 0
        for k in range(1, n + 1):
            assert table(n, k) == k * table(n - 1, k) + table(n - 1, k - 1)


def test_table_rows_are_stable_after_growth():
    table = StirlingTable(5)
    row = table.row(5)
    table.extend_to(40)
    assert table.row(5) is row
    assert table.max_n == 40


def test_factorial():
    assert factorial(0) == 1
    assert factorial(5) == 120
    product = 1
    for i in range(1, 21):
        product *= i
    assert factorial(20) == product == 2432902008176640000


def test_table_1_examples():
    assert poly_bernoulli(2, 2) == 14
    assert poly_bernoulli(3, 4) == 1066
    assert poly_bernoulli(1, 6) == 64
    assert all(poly_bernoulli(0, k) == 1 for k in range(20))


def test_table_1_values():
    got = [[poly_bernoulli(n, k) for k in range(7)] for n in range(7)]
    assert got == TABLE_1


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 5) for k in range(1, 5) if n * k <= 16])
def test_poly_bernoulli_counts_lonesum_matrices(n, k):
    assert poly_bernoulli(n, k) == lonesum_count(n, k)


def test_b44_is_6902():
    # the commonly reprinted table has 6906 here
    assert lonesum_count(4, 4) == poly_bernoulli(4, 4) == 6902


def test_symmetry_and_row_one():
    for n in range(31):
        for k in range(31):
            assert poly_bernoulli(n, k) == poly_bernoulli(k, n)
    for k in range(31):
        assert poly_bernoulli(1, k) == 2**k


def test_stirling_row_sums_are_bell_numbers():
    for n in range(21):
        assert sum(stirling2(n, k) for k in range(n + 1)) == bell_number(n)
    assert [bell_number(n) for n in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]


@given(st.integers(0, 60), st.integers(0, 60))
def test_stirling_recurrence_property(n, k):
    if n >= 1 and k >= 1:
        assert stirling2(n, k) == k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)
    assert stirling2(n, k) >= 0


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        poly_bernoulli(-1, 2)
