"""Exactly uniform sampling of acyclic orientations of K_{n,k}.

Every lonesum matrix is decoded from four pieces of data:

* m, the number of nonzero row/column classes;
* a partition of the n rows plus one sentinel row into m + 1 blocks, the
  block holding the sentinel being the zero rows;
* the same for the k columns plus a sentinel column;
* a ranking of the m nonzero row classes and of the m nonzero column classes.

Row class of rank r and column class of rank c meet in a 1 exactly when
r + c <= m + 1 (rank 1 is the class with the largest sum). Drawing each piece
with big-integer weights makes the output uniform over all B_{n,k} matrices.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .distribution import class_count_b, longest_path_counts
from .exact import poly_bernoulli, stirling2
from .orientations import OrientationMatrix, longest_path_dag

__all__ = [
    "EmpiricalDistribution",
    "class_count_probabilities",
    "decode_orientation",
    "empirical_distribution",
    "iter_decodings",
    "iter_set_partitions",
    "make_rng",
    "sample_class_count",
    "sample_orientation",
    "sample_partition",
    "uniform_below",
]

Partition = list[list[int]]


def make_rng(seed: int) -> random.Random:
    """Deterministic generator; the seed is reduced to 64 bits."""
    return random.Random(seed & 0xFFFFFFFFFFFFFFFF)


def uniform_below(bound: int, rng: random.Random) -> int:
    """Uniform integer in [0, bound) for any positive int bound, without modulo bias."""
    if bound < 1:
        raise ValueError("bound must be positive")
    return rng.randrange(bound)


def class_count_probabilities(n: int, k: int) -> list[Fraction]:
    total = poly_bernoulli(n, k)
    return [Fraction(class_count_b(n, k, m), total) for m in range(min(n, k) + 1)]


def sample_class_count(n: int, k: int, rng: random.Random) -> int:
    if n < 1 or k < 1:
        raise ValueError("need n, k >= 1")
    r = uniform_below(poly_bernoulli(n, k), rng)
    for m in range(min(n, k) + 1):
        r -= class_count_b(n, k, m)
        if r < 0:
            return m
    raise AssertionError("class weights do not sum to B_{n,k}")


def sample_partition(items: int, blocks: int, rng: random.Random) -> Partition:
    """Uniform partition of {0, ..., items-1} into ``blocks`` nonempty blocks.

    Walking from the last element down, element t opens a new block with
    probability S(t-1, j-1) / S(t, j) and otherwise joins one of the j blocks
    of the partition of the earlier elements, chosen uniformly. Blocks come
    back ordered by their smallest element.
    """
    if blocks < 1 or blocks > items:
        raise ValueError(f"cannot split {items} items into {blocks} nonempty blocks")
    choices = []
    j = blocks
    for t in range(items, 0, -1):
        if uniform_below(stirling2(t, j), rng) < stirling2(t - 1, j - 1):
            choices.append(None)
            j -= 1
        else:
            choices.append(uniform_below(j, rng))
    result: Partition = []
    for t, choice in enumerate(reversed(choices)):
        if choice is None:
            result.append([t])
        else:
            result[choice].append(t)
    return result


def decode_orientation(
    n: int,
    k: int,
    row_blocks: Sequence[Sequence[int]],
    col_blocks: Sequence[Sequence[int]],
    row_order: Sequence[int],
    col_order: Sequence[int],
) -> OrientationMatrix:
    """Build the lonesum matrix for the given class data.

    ``row_blocks`` partitions {0..n}, where n is the sentinel row; the block
    containing it is the zero class. ``row_order`` lists the indices of the
    other blocks from largest row sum to smallest. Columns likewise with
    sentinel k.
    """
    row_rank = _ranks(row_blocks, row_order, n)
    col_rank = _ranks(col_blocks, col_order, k)
    m = len(row_order)
    if len(col_order) != m:
        raise ValueError("row and column class counts differ")
    bits = tuple(
        tuple(
            int(row_rank[i] is not None and col_rank[j] is not None and row_rank[i] + col_rank[j] <= m + 1)
            for j in range(k)
        )
        for i in range(n)
    )
    return OrientationMatrix(n, k, bits)


def _ranks(blocks, order, sentinel) -> list[int | None]:
    rank: list[int | None] = [None] * (sentinel + 1)
    zero = [b for b, block in enumerate(blocks) if sentinel in block]
    if len(zero) != 1:
        raise ValueError("sentinel must lie in exactly one block")
    if sorted(order) != sorted(b for b in range(len(blocks)) if b != zero[0]):
        raise ValueError("order must rank every nonzero block exactly once")
    for position, b in enumerate(order, start=1):
        for item in blocks[b]:
            rank[item] = position
    return rank[:sentinel]


def sample_orientation(n: int, k: int, rng: random.Random) -> OrientationMatrix:
    """Uniformly random acyclic orientation of K_{n,k}."""
    m = sample_class_count(n, k, rng)
    row_blocks = sample_partition(n + 1, m + 1, rng)
    col_blocks = sample_partition(k + 1, m + 1, rng)
    row_order = [b for b, block in enumerate(row_blocks) if n not in block]
    col_order = [b for b, block in enumerate(col_blocks) if k not in block]
    rng.shuffle(row_order)
    rng.shuffle(col_order)
    return decode_orientation(n, k, row_blocks, col_blocks, row_order, col_order)


def iter_set_partitions(items: int, blocks: int) -> Iterator[Partition]:
    """Every partition of {0..items-1} into ``blocks`` blocks (restricted growth strings)."""

    def rec(t: int, current: Partition) -> Iterator[Partition]:
        remaining = items - t
        if t == items:
            if len(current) == blocks:
                yield [list(b) for b in current]
            return
        if len(current) + remaining < blocks:
            return
        for block in current:
            block.append(t)
            yield from rec(t + 1, current)
            block.pop()
        if len(current) < blocks:
            current.append([t])
            yield from rec(t + 1, current)
            current.pop()

    if items == 0:
        if blocks == 0:
            yield []
        return
    yield from rec(0, [])


def iter_decodings(n: int, k: int) -> Iterator[OrientationMatrix]:
    """Decode every (m, partitions, orders) tuple once."""
    from itertools import permutations

    for m in range(min(n, k) + 1):
        for row_blocks in iter_set_partitions(n + 1, m + 1):
            nonzero_rows = [b for b, block in enumerate(row_blocks) if n not in block]
            for col_blocks in iter_set_partitions(k + 1, m + 1):
                nonzero_cols = [b for b, block in enumerate(col_blocks) if k not in block]
                for row_order in permutations(nonzero_rows):
                    for col_order in permutations(nonzero_cols):
                        yield decode_orientation(n, k, row_blocks, col_blocks, row_order, col_order)


@dataclass
class EmpiricalDistribution:
    n: int
    k: int
    num_samples: int
    histogram: Counter = field(default_factory=Counter)

    def proportions(self) -> dict[int, float]:
        return {ell: c / self.num_samples for ell, c in sorted(self.histogram.items())}

    def tv_distance(self) -> float:
        """Total-variation distance to the exact path-length distribution."""
        exact = longest_path_counts(self.n, self.k)
        support = set(self.histogram) | set(range(len(exact.counts)))
        tv = Fraction(0)
        for ell in support:
            p = Fraction(exact.counts[ell], exact.total) if ell < len(exact.counts) else Fraction(0)
            tv += abs(Fraction(self.histogram.get(ell, 0), self.num_samples) - p)
        return float(tv / 2)


def empirical_distribution(
    n: int, k: int, num_samples: int, rng: random.Random
) -> EmpiricalDistribution:
    if num_samples < 1:
        raise ValueError("num_samples must be positive")
    hist: Counter = Counter()
    for _ in range(num_samples):
        hist[longest_path_dag(sample_orientation(n, k, rng))] += 1
    return EmpiricalDistribution(n, k, num_samples, hist)
