"""Exact distribution of the longest path length in acyclic orientations of K_{n,k}.

An n x k lonesum matrix with m nonzero row/column classes has longest path
2m - 1, 2m or 2m + 1 according to whether it has no zero line, zero rows or
zero columns but not both, or both. The class counts ``b``, ``c`` and ``d``
below count those matrices with progressively stricter zero-line rules, and
inclusion-exclusion turns them into the path-length counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import factorial, poly_bernoulli, stirling2

__all__ = [
    "PathLengthDistribution",
    "ProbabilityGeneratingPolynomial",
    "class_count_b",
    "class_count_c",
    "class_count_d",
    "longest_path_counts",
    "max_path_length",
    "mean_exact",
    "pgf",
    "tail_probability",
    "variance_exact",
]


def class_count_b(n: int, k: int, m: int) -> int:
    """Lonesum n x k matrices with m nonzero classes, zero rows and columns allowed."""
    if m < 0 or m > min(n, k):
        return 0
    f = factorial(m)
    return f * f * stirling2(n + 1, m + 1) * stirling2(k + 1, m + 1)


def class_count_c(n: int, k: int, m: int) -> int:
    """As ``class_count_b`` but with no zero column."""
    if m < 0 or m > min(n, k):
        return 0
    f = factorial(m)
    return f * f * stirling2(n + 1, m + 1) * stirling2(k, m)


def class_count_d(n: int, k: int, m: int) -> int:
    """As ``class_count_b`` but with no zero row and no zero column."""
    if m < 0 or m > min(n, k):
        return 0
    f = factorial(m)
    return f * f * stirling2(n, m) * stirling2(k, m)


@dataclass(frozen=True)
class PathLengthDistribution:
    """Counts G_{n,k}(l) indexed by path length l = 0 .. max_path_length(n, k)."""

    n: int
    k: int
    counts: tuple[int, ...]
    total: int

    def __post_init__(self):
        if sum(self.counts) != self.total:
            raise ValueError("counts do not sum to total")

    @property
    def max_length(self) -> int:
        return len(self.counts) - 1

    def as_dict(self) -> dict[int, int]:
        """Nonzero counts keyed by path length."""
        return {ell: c for ell, c in enumerate(self.counts) if c}

    def probabilities(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.total) for c in self.counts)


@dataclass(frozen=True)
class ProbabilityGeneratingPolynomial:
    """Polynomial sum_l p_l u^l with exact rational coefficients."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if sum(self.coefficients) != 1:
            raise ValueError("probabilities must sum to 1")
        if any(p < 0 for p in self.coefficients):
            raise ValueError("negative probability")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, u):
        # Horner; exact for Fraction/int input, float otherwise.
        acc = 0
        for p in reversed(self.coefficients):
            acc = acc * u + (p if isinstance(u, (int, Fraction)) else float(p))
        return acc

    def factorial_moment(self, order: int) -> Fraction:
        """The order-th derivative at u = 1, i.e. E[X (X-1) ... (X-order+1)]."""
        total = Fraction(0)
        for ell, p in enumerate(self.coefficients):
            falling = 1
            for i in range(order):
                falling *= ell - i
            total += falling * p
        return total

    def mean(self) -> Fraction:
        return self.factorial_moment(1)

    def variance(self) -> Fraction:
        d1 = self.factorial_moment(1)
        return self.factorial_moment(2) + d1 - d1 * d1


def max_path_length(n: int, k: int) -> int:
    """Longest possible path in an orientation of K_{n,k}, n, k >= 1.

    A path alternates sides, so it uses at most min(n,k) + 1 vertices of the
    larger side when the sides differ and min(n,k) of each when they are equal.
    """
    top = min(n, k)
    return 2 * top - 1 if n == k else 2 * top


def _check_sizes(n: int, k: int) -> None:
    if n < 1 or k < 1:
        raise ValueError(
            f"need n, k >= 1 (got n={n}, k={k}); K_{{0,k}} has a single empty "
            "orientation with longest path 0"
        )


def longest_path_counts(n: int, k: int) -> PathLengthDistribution:
    """Exact counts G_{n,k}(l) for every path length l.

    >>> longest_path_counts(2, 2).as_dict()
    {1: 2, 2: 4, 3: 8}
    """
    _check_sizes(n, k)
    top = min(n, k)
    counts = [0] * (max_path_length(n, k) + 1)
    for m in range(top + 1):
        b = class_count_b(n, k, m)
        c_nk = class_count_c(n, k, m)
        c_kn = class_count_c(k, n, m)
        d = class_count_d(n, k, m)
        # odd lengths: no zero line with m+1 classes, or both zero lines with m
        odd = class_count_d(n, k, m + 1) + (b - c_nk - c_kn + d)
        if 2 * m + 1 < len(counts):
            counts[2 * m + 1] += odd
        elif odd:
            raise AssertionError(f"nonzero count beyond the degree bound at m={m}")
        if m >= 1:
            even = c_nk + c_kn - 2 * d
            if 2 * m < len(counts):
                counts[2 * m] += even
            elif even:
                raise AssertionError(f"nonzero count beyond the degree bound at m={m}")
    return PathLengthDistribution(n, k, tuple(counts), poly_bernoulli(n, k))


def pgf(n: int, k: int) -> ProbabilityGeneratingPolynomial:
    dist = longest_path_counts(n, k)
    return ProbabilityGeneratingPolynomial(dist.probabilities())


def mean_exact(n: int, k: int) -> Fraction:
    return pgf(n, k).mean()


def variance_exact(n: int, k: int) -> Fraction:
    return pgf(n, k).variance()


def tail_probability(coefficients: Sequence[Fraction], center: Fraction, t) -> Fraction:
    """P(|X - center| > t) for an exact probability vector."""
    t = Fraction(t)
    return sum(
        (p for ell, p in enumerate(coefficients) if abs(ell - center) > t),
        Fraction(0),
    )
