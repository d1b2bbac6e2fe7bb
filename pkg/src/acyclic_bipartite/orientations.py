"""Orientations of K_{n,k} as 0/1 matrices, lonesum tests and longest paths.

Entry (i, j) = 1 means the edge between A_i and B_j points A_i -> B_j,
entry 0 means B_j -> A_i. Path lengths are counted in edges.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .distribution import PathLengthDistribution, max_path_length

__all__ = [
    "BRUTE_FORCE_BUDGET",
    "ClassSignature",
    "NotLonesumError",
    "CyclicOrientationError",
    "OrientationMatrix",
    "brute_force_distribution",
    "class_signature",
    "format_matrix",
    "has_forbidden_minor",
    "is_acyclic",
    "is_lonesum",
    "iter_matrices",
    "longest_path_dag",
    "longest_path_via_classes",
    "normalize_staircase",
    "parse_matrix",
]

BRUTE_FORCE_BUDGET = 20


class NotLonesumError(ValueError):
    pass


class CyclicOrientationError(ValueError):
    pass


@dataclass(frozen=True)
class OrientationMatrix:
    n: int
    k: int
    bits: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.bits) != self.n or any(len(r) != self.k for r in self.bits):
            raise ValueError(f"bits do not have shape {self.n}x{self.k}")
        if any(b not in (0, 1) for r in self.bits for b in r):
            raise ValueError("entries must be 0 or 1")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "OrientationMatrix":
        bits = tuple(tuple(int(b) for b in r) for r in rows)
        n = len(bits)
        k = len(bits[0]) if n else 0
        return cls(n, k, bits)

    @classmethod
    def from_int(cls, n: int, k: int, value: int) -> "OrientationMatrix":
        """Decode an nk-bit integer; bit i*k + j is entry (i, j)."""
        return cls(
            n, k, tuple(tuple((value >> (i * k + j)) & 1 for j in range(k)) for i in range(n))
        )

    @classmethod
    def ones(cls, n: int, k: int) -> "OrientationMatrix":
        return cls(n, k, tuple((1,) * k for _ in range(n)))

    @classmethod
    def zeros(cls, n: int, k: int) -> "OrientationMatrix":
        return cls(n, k, tuple((0,) * k for _ in range(n)))

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self.bits]

    def col_sums(self) -> list[int]:
        return [sum(r[j] for r in self.bits) for j in range(self.k)]

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "OrientationMatrix":
        """Matrix whose row i is old row row_perm[i] (same for columns)."""
        return OrientationMatrix(
            self.n,
            self.k,
            tuple(tuple(self.bits[r][c] for c in col_perm) for r in row_perm),
        )

    def row_masks(self) -> list[int]:
        return [sum(b << j for j, b in enumerate(r)) for r in self.bits]

    def __str__(self) -> str:
        return "\n".join("".join(map(str, r)) for r in self.bits)


@dataclass(frozen=True)
class ClassSignature:
    m: int
    has_zero_row: bool
    has_zero_col: bool


def has_forbidden_minor(M: OrientationMatrix) -> bool:
    """Direct scan for a 2x2 submatrix [[1,0],[0,1]] or [[0,1],[1,0]]."""
    b = M.bits
    for i in range(M.n):
        for i2 in range(i + 1, M.n):
            for j in range(M.k):
                for j2 in range(j + 1, M.k):
                    if b[i][j] == b[i2][j2] != b[i][j2] == b[i2][j]:
                        return True
    return False


def _sorted_order(sums: Sequence[int]) -> list[int]:
    # decreasing sum, ties by original index
    return sorted(range(len(sums)), key=lambda i: (-sums[i], i))


def _is_prefix_row(row: Sequence[int]) -> bool:
    s = sum(row)
    return all(row[:s]) and not any(row[s:])


def is_lonesum(M: OrientationMatrix) -> bool:
    """True iff M avoids both 2x2 permutation minors.

    Columns are sorted by decreasing sum; M is lonesum exactly when every row
    then reads 1...10...0.
    """
    col_perm = _sorted_order(M.col_sums())
    return all(_is_prefix_row([r[c] for c in col_perm]) for r in M.bits)


def normalize_staircase(
    M: OrientationMatrix,
) -> tuple[OrientationMatrix, list[int], list[int]]:
    """Sort rows and columns by decreasing sums.

    Returns the staircase matrix and the permutations used, with
    ``staircase.bits[i][j] == M.bits[row_perm[i]][col_perm[j]]``.
    """
    if not is_lonesum(M):
        raise NotLonesumError("matrix is not lonesum")
    row_perm = _sorted_order(M.row_sums())
    col_perm = _sorted_order(M.col_sums())
    return M.permuted(row_perm, col_perm), row_perm, col_perm


def class_signature(M: OrientationMatrix) -> ClassSignature:
    if not is_lonesum(M):
        raise NotLonesumError("matrix is not lonesum")
    rows = M.row_sums()
    cols = M.col_sums()
    m = len({s for s in rows if s})
    if m != len({s for s in cols if s}):
        raise AssertionError("row and column class counts differ on a lonesum matrix")
    return ClassSignature(m, 0 in rows, 0 in cols)


def longest_path_via_classes(M: OrientationMatrix) -> int:
    sig = class_signature(M)
    zero_lines = int(sig.has_zero_row) + int(sig.has_zero_col)
    return 2 * sig.m - 1 + zero_lines


def _longest_path_masks(n: int, k: int, row_masks: Sequence[int]) -> int | None:
    """Longest path in edges by Kahn's algorithm, or None if there is a cycle.

    Vertices 0..n-1 are A_i, n..n+k-1 are B_j.
    """
    succ: list[list[int]] = []
    indeg = [0] * (n + k)
    for i, mask in enumerate(row_masks):
        succ.append([n + j for j in range(k) if mask >> j & 1])
        indeg[i] = k - len(succ[-1])
    for j in range(k):
        bit = 1 << j
        out = [i for i in range(n) if not row_masks[i] & bit]
        succ.append(out)
        indeg[n + j] = n - len(out)
    dist = [0] * (n + k)
    stack = [v for v in range(n + k) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        dv = dist[v] + 1
        for w in succ[v]:
            if dv > dist[w]:
                dist[w] = dv
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    if seen != n + k:
        return None
    return max(dist) if dist else 0


def is_acyclic(M: OrientationMatrix) -> bool:
    return _longest_path_masks(M.n, M.k, M.row_masks()) is not None


def longest_path_dag(M: OrientationMatrix) -> int:
    length = _longest_path_masks(M.n, M.k, M.row_masks())
    if length is None:
        raise CyclicOrientationError("orientation contains a directed cycle")
    return length


def iter_matrices(n: int, k: int) -> Iterator[OrientationMatrix]:
    """All 2^(nk) matrices in ascending order of their bit encoding."""
    for value in range(1 << (n * k)):
        yield OrientationMatrix.from_int(n, k, value)


def brute_force_distribution(n: int, k: int) -> PathLengthDistribution:
    """Histogram of longest paths over every acyclic orientation, by enumeration."""
    if n < 1 or k < 1:
        raise ValueError("need n, k >= 1")
    if n * k > BRUTE_FORCE_BUDGET:
        raise ValueError(f"n*k = {n * k} exceeds the enumeration budget {BRUTE_FORCE_BUDGET}")
    hist: Counter[int] = Counter()
    row_mask = (1 << k) - 1
    for value in range(1 << (n * k)):
        masks = [(value >> (i * k)) & row_mask for i in range(n)]
        length = _longest_path_masks(n, k, masks)
        if length is not None:
            hist[length] += 1
    top = max_path_length(n, k)
    if any(ell > top for ell in hist):
        raise AssertionError(f"path longer than {top}")
    counts = tuple(hist.get(ell, 0) for ell in range(top + 1))
    return PathLengthDistribution(n, k, counts, sum(counts))


def format_matrix(M: OrientationMatrix) -> str:
    """Text form: a line "n k" then n lines of k characters from {0,1}."""
    return f"{M.n} {M.k}\n{M}\n" if M.n else f"{M.n} {M.k}\n"


def parse_matrix(text: str) -> OrientationMatrix:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    try:
        n, k = (int(t) for t in lines[0].split())
    except ValueError:
        raise ValueError(f"bad header line {lines[0]!r}, expected 'n k'") from None
    body = lines[1:]
    if len(body) != n:
        raise ValueError(f"expected {n} rows, found {len(body)}")
    rows = []
    for ln in body:
        if len(ln) != k or set(ln) - {"0", "1"}:
            raise ValueError(f"bad row {ln!r}")
        rows.append(tuple(int(ch) for ch in ln))
    return OrientationMatrix(n, k, tuple(rows))

