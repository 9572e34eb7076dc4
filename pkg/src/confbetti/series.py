"""Truncated power series in t with exact rational coefficients.

Only the operations the Betti formulas need are provided: sums, products,
scalars, and multiplication/exact division by powers of t.  Denominators
of the form (1-t)^a (1-t^2)^b are handled by multiplying with the
precomputed expansions below.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .core import ext_binom


class SeriesError(ArithmeticError):
    pass


class TruncatedSeries:
    """Coefficients of t^0 .. t^trunc; higher terms are unknown."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable, trunc: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if trunc is None:
            if not cs:
                raise ValueError("empty series needs an explicit trunc")
            trunc = len(cs) - 1
        if trunc < 0:
            raise ValueError("trunc must be nonnegative")
        cs = cs[: trunc + 1]
        cs.extend([Fraction(0)] * (trunc + 1 - len(cs)))
        self._coeffs = tuple(cs)

    @classmethod
    def from_terms(cls, terms: dict[int, object], trunc: int) -> TruncatedSeries:
        cs = [0] * (trunc + 1)
        for e, c in terms.items():
            if e < 0:
                raise ValueError("negative exponent")
            if e <= trunc:
                cs[e] = c
        return cls(cs, trunc)

    @classmethod
    def one(cls, trunc: int) -> TruncatedSeries:
        return cls.from_terms({0: 1}, trunc)

    @classmethod
    def zero(cls, trunc: int) -> TruncatedSeries:
        return cls([], trunc)

    @property
    def trunc(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def __getitem__(self, j: int) -> Fraction:
        return coefficient(self, j)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __add__(self, other):
        return series_add(self, _coerce(other, self.trunc))

    __radd__ = __add__

    def __neg__(self):
        return series_scale(self, -1)

    def __sub__(self, other):
        return series_add(self, series_scale(_coerce(other, self.trunc), -1))

    def __rsub__(self, other):
        return series_add(_coerce(other, self.trunc), series_scale(self, -1))

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return series_scale(self, other)

    __rmul__ = __mul__

    def truncate(self, trunc: int) -> TruncatedSeries:
        if trunc > self.trunc:
            raise SeriesError("cannot raise the truncation order")
        return TruncatedSeries(self._coeffs, trunc)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._coeffs)

    def to_text(self) -> str:
        return render_text(self)

    def to_json(self) -> list[str]:
        return [_rat(c) for c in self._coeffs]

    def __repr__(self):
        return f"TruncatedSeries({self.to_text()}, trunc={self.trunc})"


def _coerce(x, trunc: int) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    return TruncatedSeries.from_terms({0: Fraction(x)}, trunc)


def _rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.trunc, b.trunc)
    return TruncatedSeries([a.coeffs[j] + b.coeffs[j] for j in range(n + 1)], n)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.trunc, b.trunc)
    ac, bc = a.coeffs, b.coeffs
    out = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        ai = ac[i]
        if not ai:
            continue
        for j in range(n + 1 - i):
            if bc[j]:
                out[i + j] += ai * bc[j]
    return TruncatedSeries(out, n)


def series_scale(a: TruncatedSeries, c) -> TruncatedSeries:
    c = Fraction(c)
    return TruncatedSeries([c * x for x in a.coeffs], a.trunc)


def series_shift(a: TruncatedSeries, m: int) -> TruncatedSeries:
    """Multiply by t^m.  Negative m divides exactly and shortens the truncation."""
    if m >= 0:
        return TruncatedSeries([0] * m + list(a.coeffs), a.trunc + m)
    d = -m
    if any(a.coeffs[:d]):
        raise SeriesError("inexact division by t")
    if d > a.trunc:
        raise SeriesError("division by t exhausts the truncation")
    return TruncatedSeries(a.coeffs[d:], a.trunc - d)


def coefficient(a: TruncatedSeries, j: int) -> Fraction:
    if j < 0:
        return Fraction(0)
    if j > a.trunc:
        raise SeriesError(f"coefficient of t^{j} is beyond truncation {a.trunc}")
    return a.coeffs[j]


def polynomial(coeffs: Sequence, trunc: int) -> TruncatedSeries:
    """A polynomial in t given low-to-high, cut at ``trunc``."""
    return TruncatedSeries.from_terms(dict(enumerate(coeffs)), trunc)


def geometric_power(m: int, trunc: int) -> TruncatedSeries:
    """1/(1-t)^m."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return TruncatedSeries.one(trunc)
    return TruncatedSeries([ext_binom(m + j - 1, j) for j in range(trunc + 1)], trunc)


def X_series(g: int, trunc: int) -> TruncatedSeries:
    """Poincare series of Q[a~_i, b~_i] (x) Lambda[a_i, b_i], i.e. 1/(1-t)^(2g)."""
    if g < 0:
        raise ValueError("g must be nonnegative")
    return geometric_power(2 * g, trunc)


def S_series(trunc: int) -> TruncatedSeries:
    """1/(1-t^2)^2, the Poincare series of a polynomial ring on two degree-2 classes."""
    return TruncatedSeries.from_terms({2 * j: j + 1 for j in range(trunc // 2 + 1)}, trunc)


def homology_series(ker: TruncatedSeries, whole: TruncatedSeries) -> TruncatedSeries:
    """P_H = P_ker + t^-1 (P_ker - P_V) for a differential of degree -1.

    The shift is exact: in degree 0 everything is a cycle.
    """
    return ker + series_shift(ker - whole, -1)


def render_text(a: TruncatedSeries, var: str = "t") -> str:
    parts = []
    for j, c in enumerate(a.coeffs):
        if not c:
            continue
        mono = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{_rat(mag)}*{mono}"
        else:
            body = _rat(mag)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"
