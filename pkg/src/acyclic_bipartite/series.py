"""Truncated power series in x and y with polynomial-in-u coefficients.

A ``TruncatedSeries`` of order N keeps x-degree <= N and y-degree <= N
separately (a rectangle, not a total-degree triangle), and each (x, y)
coefficient is a dense polynomial in u of degree <= 2N + 1 with Fraction
coefficients. Division only happens through 1 / (1 - g) with g vanishing at
the origin.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

__all__ = [
    "TruncatedSeries",
    "expand_B",
    "expand_B_closed_form",
    "expand_F",
    "expand_parity_parts",
    "series_exp",
    "series_exp_minus_one",
    "series_geometric",
]

Poly = tuple[Fraction, ...]


def _poly_trim_add(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return out


class TruncatedSeries:
    """Element of Q[u][[x, y]] modulo x^(N+1), y^(N+1) and u^(2N+2)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=None):
        if order < 0:
            raise ValueError("order must be nonnegative")
        self.order = order
        width = self.u_width
        if coeffs is None:
            coeffs = [[[Fraction(0)] * width for _ in range(order + 1)] for _ in range(order + 1)]
        else:
            coeffs = [
                [
                    [Fraction(c) for c in coeffs[a][b]][:width]
                    + [Fraction(0)] * max(0, width - len(coeffs[a][b]))
                    for b in range(order + 1)
                ]
                for a in range(order + 1)
            ]
        # stored as nested tuples so instances are immutable
        self.coeffs: tuple[tuple[Poly, ...], ...] = tuple(
            tuple(tuple(p) for p in row) for row in coeffs
        )

    @property
    def u_width(self) -> int:
        return 2 * self.order + 2

    @classmethod
    def constant(cls, order: int, value=1) -> "TruncatedSeries":
        return cls.monomial(order, 0, 0, 0, value)

    @classmethod
    def monomial(cls, order: int, a: int, b: int, ell: int, value=1) -> "TruncatedSeries":
        s = cls(order)
        if a > order or b > order or ell >= s.u_width:
            return s
        rows = [[list(p) for p in row] for row in s.coeffs]
        rows[a][b][ell] = Fraction(value)
        return cls(order, rows)

    def coefficient(self, a: int, b: int, ell: int | None = None):
        """[x^a y^b] as a u-polynomial, or [x^a y^b u^ell] if ell is given."""
        if a > self.order or b > self.order:
            raise IndexError(f"({a}, {b}) is beyond the truncation order {self.order}")
        poly = self.coeffs[a][b]
        if ell is None:
            return poly
        return poly[ell] if 0 <= ell < len(poly) else Fraction(0)

    def _check(self, other: "TruncatedSeries") -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"cannot combine TruncatedSeries with {type(other).__name__}")
        if other.order != self.order:
            raise ValueError("series orders differ")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self + TruncatedSeries.constant(self.order, other)
        self._check(other)
        return TruncatedSeries(
            self.order,
            [[_poly_trim_add(p, q) for p, q in zip(r1, r2)] for r1, r2 in zip(self.coeffs, other.coeffs)],
        )

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries(self.order, [[[c * x for x in p] for p in row] for row in self.coeffs])

    def mul_u_poly(self, poly: Sequence) -> "TruncatedSeries":
        """Multiply every coefficient by a polynomial in u (given low degree first)."""
        width = self.u_width
        poly = [Fraction(c) for c in poly]
        rows = []
        for row in self.coeffs:
            new_row = []
            for p in row:
                out = [Fraction(0)] * width
                for i, c in enumerate(p):
                    if c:
                        for j, d in enumerate(poly):
                            if i + j < width:
                                out[i + j] += c * d
                new_row.append(out)
            rows.append(new_row)
        return TruncatedSeries(self.order, rows)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        N = self.order
        width = self.u_width
        out = [[[Fraction(0)] * width for _ in range(N + 1)] for _ in range(N + 1)]
        left = _sparse(self)
        right = _sparse(other)
        for (a1, b1), p in left:
            for (a2, b2), q in right:
                a, b = a1 + a2, b1 + b2
                if a > N or b > N:
                    continue
                target = out[a][b]
                for i, c in p:
                    for j, d in q:
                        if i + j < width:
                            target[i + j] += c * d
        return TruncatedSeries(N, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def constant_term(self) -> Poly:
        return self.coeffs[0][0]

    def at_u(self, u) -> list[list[Fraction]]:
        """Evaluate the u-polynomials, giving a plain x, y coefficient array."""
        u = Fraction(u)
        return [[sum((c * u**i for i, c in enumerate(p)), Fraction(0)) for p in row] for row in self.coeffs]

    def egf_counts(self) -> dict[tuple[int, int, int], Fraction]:
        """a! b! [x^a y^b u^ell] for every nonzero coefficient."""
        return {
            (a, b, ell): c * factorial(a) * factorial(b)
            for a, row in enumerate(self.coeffs)
            for b, p in enumerate(row)
            for ell, c in enumerate(p)
            if c
        }

    def __repr__(self):
        return f"TruncatedSeries(order={self.order}, nonzero={len(self.egf_counts())})"


def _sparse(s: TruncatedSeries):
    return [
        ((a, b), [(i, c) for i, c in enumerate(p) if c])
        for a, row in enumerate(s.coeffs)
        for b, p in enumerate(row)
        if any(p)
    ]


def _univariate(variable: str, N: int, values: Sequence[Fraction]) -> TruncatedSeries:
    if variable not in ("x", "y"):
        raise ValueError(f"variable must be 'x' or 'y', got {variable!r}")
    s = TruncatedSeries(N)
    rows = [[list(p) for p in row] for row in s.coeffs]
    for a in range(N + 1):
        if variable == "x":
            rows[a][0][0] = values[a]
        else:
            rows[0][a][0] = values[a]
    return TruncatedSeries(N, rows)


def series_exp(variable: str, N: int) -> TruncatedSeries:
    return _univariate(variable, N, [Fraction(1, factorial(a)) for a in range(N + 1)])


def series_exp_minus_one(variable: str, N: int) -> TruncatedSeries:
    """e^x - 1 (or e^y - 1) truncated at degree N."""
    return _univariate(
        variable, N, [Fraction(0)] + [Fraction(1, factorial(a)) for a in range(1, N + 1)]
    )


def series_geometric(g: TruncatedSeries, N: int | None = None) -> TruncatedSeries:
    """sum_{j >= 0} g^j = 1 / (1 - g), for g with zero constant term.

    Solved as S = 1 + g S, filling coefficients in increasing (a, b) order;
    this gives the same truncation as summing the powers of g.
    """
    if N is not None and N != g.order:
        raise ValueError("N must match the order of g")
    if any(g.constant_term()):
        raise ValueError("geometric expansion needs g with zero constant term")
    order = g.order
    width = g.u_width
    terms = _sparse(g)
    S = [[None] * (order + 1) for _ in range(order + 1)]
    for a in range(order + 1):
        for b in range(order + 1):
            acc = [Fraction(0)] * width
            if a == 0 and b == 0:
                acc[0] = Fraction(1)
            for (a1, b1), p in terms:
                if a1 > a or b1 > b:
                    continue
                q = S[a - a1][b - b1]
                for i, c in p:
                    for j, d in enumerate(q):
                        if d and i + j < width:
                            acc[i + j] += c * d
            S[a][b] = acc
    return TruncatedSeries(order, S)


def _kernel(N: int, u_poly: Sequence) -> tuple[TruncatedSeries, TruncatedSeries, TruncatedSeries]:
    ex = series_exp_minus_one("x", N)
    ey = series_exp_minus_one("y", N)
    prod = ex * ey
    return ex, ey, series_geometric(prod.mul_u_poly(u_poly))


def expand_F(N: int) -> TruncatedSeries:
    """(e^{x+y} - (u-1)^2 (e^x-1)(e^y-1)) / (1 - u^2 (e^x-1)(e^y-1))."""
    ex, ey, inv = _kernel(N, [0, 0, 1])
    numerator = series_exp("x", N) * series_exp("y", N) - (ex * ey).mul_u_poly([1, -2, 1])
    return numerator * inv


def expand_B(N: int) -> TruncatedSeries:
    """e^{x+y} / (1 - (e^x-1)(e^y-1)), the poly-Bernoulli generating function."""
    _, _, inv = _kernel(N, [1])
    return series_exp("x", N) * series_exp("y", N) * inv


def expand_B_closed_form(N: int) -> TruncatedSeries:
    """e^{x+y} / (e^x + e^y - e^{x+y}), written as a geometric series in 1 - denominator.

    1 - (e^x + e^y - e^{x+y}) = (e^x - 1)(e^y - 1) is what makes the two forms
    agree; this routine builds the denominator from the three exponentials
    directly so the identity is checked rather than assumed.
    """
    exy = series_exp("x", N) * series_exp("y", N)
    denominator = series_exp("x", N) + series_exp("y", N) - exy
    return exy * series_geometric(1 - denominator)


def expand_parity_parts(N: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Odd and even path-length parts.

    odd  = 2u (e^x-1)(e^y-1) / (1 - u^2 (e^x-1)(e^y-1))
    even = 1 + (e^x + e^y - 2) / (1 - u^2 (e^x-1)(e^y-1))
    """
    ex, ey, inv = _kernel(N, [0, 0, 1])
    odd = (ex * ey).mul_u_poly([0, 2]) * inv
    even = 1 + (ex + ey) * inv
    return odd, even
