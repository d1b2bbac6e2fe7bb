import random
from fractions import Fraction
from math import factorial

import pytest

from acyclic_bipartite.distribution import longest_path_counts
from acyclic_bipartite.exact import poly_bernoulli, stirling2
from acyclic_bipartite.series import (
    TruncatedSeries,
    expand_B,
    expand_B_closed_form,
    expand_F,
    expand_parity_parts,
    series_exp,
    series_exp_minus_one,
    series_geometric,
)


@pytest.fixture(scope="module")
def F8():
    return expand_F(8)


def x_coeffs(s):
    return [s.coefficient(a, 0, 0) for a in range(s.order + 1)]


def test_exp_minus_one():
    s = series_exp_minus_one("x", 3)
    assert x_coeffs(s) == [0, 1, Fraction(1, 2), Fraction(1, 6)]
    assert series_exp_minus_one("y", 0) == TruncatedSeries(0)
    y = series_exp_minus_one("y", 2)
    assert [y.coefficient(0, b, 0) for b in range(3)] == [0, 1, Fraction(1, 2)]
    with pytest.raises(ValueError):
        series_exp_minus_one("z", 2)


def test_power_gives_stirling():
    e = series_exp_minus_one("x", 4)
    assert (e * e).scale(Fraction(1, 2)).coefficient(4, 0, 0) == Fraction(7, 24)


def test_stirling_egf_identities():
    N = 10
    e = series_exp_minus_one("x", N)
    ex = series_exp("x", N)
    power = TruncatedSeries.constant(N)
    for k in range(7):
        plain = power.scale(Fraction(1, factorial(k)))
        shifted = ex * plain
        for n in range(N + 1):
            assert plain.coefficient(n, 0, 0) * factorial(n) == stirling2(n, k)
            assert shifted.coefficient(n, 0, 0) * factorial(n) == stirling2(n + 1, k + 1)
        power = power * e


def test_geometric_examples():
    assert series_geometric(TruncatedSeries(3)) == TruncatedSeries.constant(3)
    g = (series_exp_minus_one("x", 2) * series_exp_minus_one("y", 2)).mul_u_poly([0, 0, 1])
    S = series_geometric(g)
    assert S.coefficient(1, 1)[:3] == (0, 0, 1)
    assert (1 - g) * S == TruncatedSeries.constant(2)


def test_geometric_equals_power_sum():
    N = 4
    g = (series_exp_minus_one("x", N) * series_exp_minus_one("y", N)).mul_u_poly([1, 1])
    total = TruncatedSeries.constant(N)
    power = TruncatedSeries.constant(N)
    for _ in range(N + 1):
        power = power * g
        total = total + power
    assert series_geometric(g) == total


def test_geometric_rejects_constant_term():
    with pytest.raises(ValueError):
        series_geometric(TruncatedSeries.constant(3, Fraction(1, 2)))


def test_F_examples(F8):
    assert F8.coefficient(2, 2, 3) == 2
    assert F8.coefficient(2, 2, 3) * 2 * 2 == 8
    assert F8.coefficient(0, 0, 0) == 1
    assert sum(F8.coefficient(1, 2)) * factorial(1) * factorial(2) == 4


def test_F_coefficient_identity(F8):
    egf = F8.egf_counts()
    for n in range(1, 9):
        for k in range(1, 9):
            counts = longest_path_counts(n, k).counts
            for ell in range(F8.u_width):
                want = counts[ell] if ell < len(counts) else 0
                assert egf.get((n, k, ell), 0) == want


def test_F_boundary_rows(F8):
    # one side empty: a single orientation with no edges
    for k in range(9):
        assert F8.coefficient(0, k)[0] * factorial(k) == 1
        assert not any(F8.coefficient(0, k)[1:])


def test_B_examples():
    B = expand_B(6)
    assert B.coefficient(2, 2, 0) == Fraction(14, 4)
    assert B.coefficient(3, 3, 0) == Fraction(230, 36)
    for k in range(7):
        assert B.coefficient(0, k, 0) == Fraction(1, factorial(k))


def test_B_is_poly_bernoulli_and_F_at_one(F8):
    B = expand_B(8)
    for n in range(9):
        for k in range(9):
            assert B.coefficient(n, k, 0) * factorial(n) * factorial(k) == poly_bernoulli(n, k)
    assert F8.at_u(1) == B.at_u(1)


def test_B_closed_form_agrees():
    assert expand_B_closed_form(7) == expand_B(7)


def test_parity_parts(F8):
    odd, even = expand_parity_parts(8)
    assert odd + even == F8
    for s, parity in ((odd, 1), (even, 0)):
        for row in s.coeffs:
            for poly in row:
                assert all(c == 0 for ell, c in enumerate(poly) if ell % 2 != parity)
    assert even.coefficient(2, 2, 2) * 4 == 4
    assert all(odd.coefficient(a, b, 0) == 0 for a in range(9) for b in range(9))


def test_parity_parts_at_order_six():
    odd, even = expand_parity_parts(6)
    assert odd + even == expand_F(6)


def random_series(rng, N):
    rows = [
        [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) if rng.random() < 0.4 else Fraction(0)
          for _ in range(2 * N + 2)] for _ in range(N + 1)]
        for _ in range(N + 1)
    ]
    return TruncatedSeries(N, rows)


def test_ring_laws_random():
    rng = random.Random(5)
    for _ in range(15):
        N = rng.randint(0, 3)
        a, b, c = (random_series(rng, N) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a + (-a) == TruncatedSeries(N)
        assert a * 1 == a


def test_truncation_drops_only_high_degrees():
    x = TruncatedSeries.monomial(2, 1, 0, 0)
    y = TruncatedSeries.monomial(2, 0, 1, 0)
    assert x * x == TruncatedSeries.monomial(2, 2, 0, 0)
    assert x * x * x == TruncatedSeries(2)
    # rectangle truncation keeps x^2 y^2
    assert (x * x) * (y * y) == TruncatedSeries.monomial(2, 2, 2, 0)


def test_order_mismatch():
    with pytest.raises(ValueError):
        TruncatedSeries(2) + TruncatedSeries(3)
    with pytest.raises(IndexError):
        TruncatedSeries(2).coefficient(3, 0)
